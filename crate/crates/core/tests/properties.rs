use std::sync::Arc;

use proptest::prelude::*;
use quiverkit::homol::{ext_dim, proj_dimension, syzygy, DEFAULT_CAP};
use quiverkit::modcat::{decompose, direct_sum, enumerate_indecomposables, hom_dim, is_isomorphic, Module};
use quiverkit::sgcat::stable_hom;
use quiverkit::{Algebra, Field, Matrix, NakayamaSpec};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(7))]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |xs| Matrix::from_flat(f, r, c, xs.into_iter().map(|x| f.int(x)).collect()))
    })
}

fn nakayama_strategy() -> impl Strategy<Value = Arc<Algebra>> {
    proptest::collection::vec(2usize..=5, 1..=3)
        .prop_filter_map("admissible", |seq| {
            let spec = NakayamaSpec::cyclic(&seq);
            spec.validate().ok()?;
            Algebra::nakayama(&spec, Field::Rationals).ok().map(Arc::new)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (r, pivots) = m.rref();
        let (r2, pivots2) = r.rref();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn inverse_of_invertible(m in matrix_strategy()) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Matrix::identity(m.field(), m.rows()));
        } else {
            prop_assert!(!m.is_square() || m.rank() < m.rows());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nakayama_structure(a in nakayama_strategy()) {
        let seq = a.nakayama_spec().unwrap().sequence.clone();
        prop_assert_eq!(a.dim(), seq.iter().sum::<usize>());
        let indec = enumerate_indecomposables(a.clone()).unwrap();
        prop_assert_eq!(indec.len(), a.dim());
        for x in &indec {
            for v in 0..a.num_vertices() {
                let p = Module::projective(a.clone(), v).unwrap();
                prop_assert_eq!(hom_dim(&p, &x.module).unwrap(), x.module.dims()[v]);
            }
            prop_assert_eq!(decompose(&x.module).unwrap().len(), 1);
        }
    }

    #[test]
    fn sums_and_syzygies(a in nakayama_strategy(), i in 0usize..32, j in 0usize..32) {
        let indec = enumerate_indecomposables(a.clone()).unwrap();
        let x = &indec[i % indec.len()].module;
        let y = &indec[j % indec.len()].module;
        let s = direct_sum(&[x.clone(), y.clone()]).unwrap().module;
        let parts = decompose(&s).unwrap();
        prop_assert_eq!(parts.len(), 2);
        prop_assert!(stable_hom(x, y).unwrap().dim() <= hom_dim(x, y).unwrap());
        // dimension shift: Ext^2(X, Y) = Ext^1(ΩX, Y)
        let om = syzygy(x).unwrap().0;
        prop_assert_eq!(ext_dim(2, x, y).unwrap(), ext_dim(1, &om, y).unwrap());
        let c = proj_dimension(x, DEFAULT_CAP).unwrap();
        prop_assert!(c.verify().unwrap());
        prop_assert!(is_isomorphic(&s, &direct_sum(&[y.clone(), x.clone()]).unwrap().module).unwrap().is_yes());
    }
}
