mod common;

use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;

use common::*;
use mcvlie::arrangement::{
    codim2_flats, is_parallel, is_y_closed, split_parallel, y_closure, Arrangement, Hyperplane, Line,
};
use mcvlie::exact::{int, ExactMatrix, Rational};
use mcvlie::holonomy::{check_integrability, zero_extend, PfaffianSystem};

fn arrangement(dim: usize) -> impl Strategy<Value = Arrangement> {
    let hyperplane = (proptest::collection::vec(-2i64..=2, dim), -1i64..=1);
    proptest::collection::vec(hyperplane, 1..=5).prop_filter_map("degenerate arrangement", move |hs| {
        let mut out: Vec<Hyperplane> = Vec::new();
        for (k, (normal, offset)) in hs.into_iter().enumerate() {
            let h = Hyperplane::new(format!("H{k}"), normal.into_iter().map(int).collect(), int(offset)).ok()?;
            if !out.iter().any(|g| g.normal() == h.normal() && g.offset() == h.offset()) {
                out.push(h);
            }
        }
        Arrangement::new(dim, out).ok()
    })
}

fn line(dim: usize) -> impl Strategy<Value = Line> {
    proptest::collection::vec(-2i64..=2, dim)
        .prop_filter_map("zero direction", |v| Line::new(v.into_iter().map(int).collect()).ok())
}

/// Residues `c_H M + e_H Id`: pairwise commuting, hence integrable.
fn commuting_system(a: Arrangement) -> impl Strategy<Value = PfaffianSystem> {
    let n = a.len();
    (int_matrix(2, 2), proptest::collection::vec((small_int(), small_int()), n)).prop_map(move |(m, coeffs)| {
        let residues = coeffs.iter().map(|(c, e)| m.scale(c).shifted(e)).collect();
        PfaffianSystem::from_ordered(a.clone(), residues).unwrap()
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn split_parallel_partitions(a in arrangement(3), y in line(3)) {
        let (par, trans) = split_parallel(&a, &y).unwrap();
        prop_assert_eq!(par.len() + trans.len(), a.len());
        for h in par.hyperplanes() {
            prop_assert!(dot(h.normal(), y.direction()).is_zero() && is_parallel(h, &y));
        }
        for h in trans.hyperplanes() {
            prop_assert!(!is_parallel(h, &y));
        }
    }

    #[test]
    fn codim2_families_cover_each_meeting_pair_once(a in arrangement(3)) {
        let flats = codim2_flats(&a);
        for f in &flats {
            prop_assert!(f.family.len() >= 2);
            for id in &f.family {
                prop_assert!(f.contains_hyperplane(a.get(id).unwrap()));
            }
        }
        let hs = a.hyperplanes();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                let m = ExactMatrix::from_rows(vec![hs[i].augmented(), hs[j].augmented()]).unwrap();
                let linear = ExactMatrix::from_rows(vec![hs[i].normal().to_vec(), hs[j].normal().to_vec()]).unwrap();
                let meets = linear.rank() == 2 && m.rank() == 2;
                let together = flats
                    .iter()
                    .filter(|f| f.family.iter().any(|x| x == hs[i].id()) && f.family.iter().any(|x| x == hs[j].id()))
                    .count();
                prop_assert_eq!(together, usize::from(meets));
            }
        }
    }

    #[test]
    fn closure_is_closed_minimal_and_idempotent(a in arrangement(3), y in line(3)) {
        let c = y_closure(&a, &y).unwrap();
        prop_assert!(is_y_closed(&c, &y).unwrap());
        prop_assert_eq!(&c.hyperplanes()[..a.len()], a.hyperplanes());
        // Every added hyperplane is forced by a flat of the input itself.
        let flats = codim2_flats(&a);
        for h in &c.hyperplanes()[a.len()..] {
            prop_assert!(flats.iter().any(|x| x.join_direction(y.direction()) == Some((h.normal().to_vec(), h.offset().clone()))));
        }
        prop_assert_eq!(y_closure(&c, &y).unwrap(), c.clone());
        prop_assert_eq!(is_y_closed(&a, &y).unwrap(), c.len() == a.len());
    }

    #[test]
    fn zero_extension_stays_integrable(s in arrangement(2).prop_flat_map(commuting_system), y in line(2)) {
        prop_assert!(check_integrability(&s).is_ok());
        let closure = y_closure(s.arrangement(), &y).unwrap();
        let e = zero_extend(&s, &closure).unwrap();
        prop_assert!(check_integrability(&e).is_ok());
        for h in s.arrangement().hyperplanes() {
            prop_assert_eq!(e.residue(h.id()).unwrap(), s.residue(h.id()).unwrap());
        }
    }

    #[test]
    fn integrability_is_conjugation_invariant(a in arrangement(2), ms in proptest::collection::vec(int_matrix(2, 2), 5), p in invertible(2)) {
        let residues: BTreeMap<String, ExactMatrix> = a.ids().into_iter().zip(ms).collect();
        let s = PfaffianSystem::new(a, 2, residues).unwrap();
        let t = s.conjugate(&p, &p.inverse().unwrap());
        prop_assert_eq!(check_integrability(&s).is_ok(), check_integrability(&t).is_ok());
    }
}

#[test]
fn braid_arrangements_are_closed_along_the_last_axis() {
    for k in [3, 4] {
        let a = Arrangement::braid(k);
        let mut e = vec![int(0); k];
        e[k - 1] = int(1);
        assert!(is_y_closed(&a, &Line::new(e).unwrap()).unwrap(), "braid({k})");
    }
}
