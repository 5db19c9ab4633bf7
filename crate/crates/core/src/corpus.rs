//! A fixed set of small rings covering the families the checks care about:
//! `Z/n`, fields, matrix rings, triangular rings, null and nil rings, free
//! nil levels, products and non-unital rings.

use crate::construct::{cyclic, matrix_units, null_ring, product, truncated_polynomial, upper_triangular};
use crate::profinite::free_nil_ring;
use crate::ring::FiniteRing;
use crate::wedderburn::matrix_ring;

/// `2Z/8Z`: additive group `Z/4` on `g = 2` with `g² = 2g`.
pub fn even_residues_mod_8() -> FiniteRing {
    FiniteRing::from_products("2z8", vec![4], [(0, 0, vec![2])]).expect("2Z/8 is a ring")
}

/// Matrices `[[a, b], [0, 0]]` over `F_2`: a left identity but no identity.
pub fn row_ring() -> FiniteRing {
    FiniteRing::from_products("row_f2", vec![2, 2], [(0, 0, vec![1, 0]), (0, 1, vec![0, 1])])
        .expect("row matrices form a ring")
}

fn prod(name: &str, rings: &[FiniteRing]) -> FiniteRing {
    product(rings).expect("nonempty product").ring.renamed(name)
}

/// Every corpus ring, named by its file stem.
pub fn corpus() -> Vec<FiniteRing> {
    let mut out = vec![
        cyclic(2).renamed("z2"),
        cyclic(4).renamed("z4"),
        cyclic(6).renamed("z6"),
        cyclic(8).renamed("z8"),
        cyclic(9).renamed("z9"),
        cyclic(12).renamed("z12"),
    ];
    let fields_and_matrices = [("f4", 1, 4), ("f8", 1, 8), ("f9", 1, 9), ("m2_f2", 2, 2), ("m2_f3", 2, 3)];
    for (name, k, q) in fields_and_matrices {
        out.push(matrix_ring(k, q).expect("prime power").renamed(name));
    }
    out.extend([
        matrix_units(4, 2).renamed("m2_z4"),
        truncated_polynomial(2, 2).renamed("f2_t2"),
        truncated_polynomial(2, 3).renamed("f2_t3"),
        truncated_polynomial(3, 2).renamed("f3_t2"),
        upper_triangular(2, 2, false).renamed("t2_f2"),
        upper_triangular(3, 2, false).renamed("t2_f3"),
        upper_triangular(2, 3, true).renamed("st3_f2"),
        null_ring(&[2]).renamed("null_2"),
        null_ring(&[2, 2]).renamed("null_2_2"),
        null_ring(&[4]).renamed("null_4"),
        null_ring(&[3, 3]).renamed("null_3_3"),
        even_residues_mod_8(),
        row_ring(),
    ]);
    for (p, g) in [(2, 1), (2, 2), (2, 3), (3, 1)] {
        out.push(free_nil_ring(p, g).expect("small free nil ring"));
    }
    let f2 = cyclic(2);
    let f3 = cyclic(3);
    let f4 = matrix_ring(1, 4).expect("F_4");
    let m2 = matrix_ring(2, 2).expect("M_2(F_2)");
    out.extend([
        prod("f2xf2", &[f2.clone(), f2.clone()]),
        prod("f2xf3xf4", &[f2.clone(), f3.clone(), f4.clone()]),
        prod("f4xf4", &[f4.clone(), f4]),
        prod("m2_f2xf2", &[m2, f2.clone()]),
        prod("z4xt2_f2", &[cyclic(4), upper_triangular(2, 2, false)]),
        prod("f2xnull_2", &[f2, null_ring(&[2])]),
    ]);
    out
}

pub fn by_name(name: &str) -> Option<FiniteRing> {
    corpus().into_iter().find(|r| r.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c.len() >= 15);
        assert!(c.iter().all(|r| r.order() <= 256 && r.order() > 1));
        let names: HashSet<&str> = c.iter().map(|r| r.name()).collect();
        assert_eq!(names.len(), c.len());
        assert!(c.iter().any(|r| !r.is_unital()));
        assert_eq!(by_name("row_f2").unwrap().unit(), None);
        assert_eq!(by_name("freenil_p2_g3").unwrap().order(), 128);
    }
}
