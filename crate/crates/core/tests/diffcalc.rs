use latwave::diffcalc::{self, apply_1d, apply_chain, Axis, DiffOp, SampledSequence};
use latwave::field::FieldSlab;
use latwave::grid::{Boundary, GridSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn pair(len: std::ops::Range<usize>) -> impl Strategy<Value = (Vec<Complex64>, Vec<Complex64>)> {
    len.prop_flat_map(|n| (prop::collection::vec(complex(), n), prop::collection::vec(complex(), n)))
}

fn boundary() -> impl Strategy<Value = Boundary> {
    prop_oneof![Just(Boundary::Periodic), Just(Boundary::Shrinking)]
}

fn max_rel(a: &SampledSequence, b: &SampledSequence) -> f64 {
    assert_eq!(a.len(), b.len());
    a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).norm() / x.norm().max(y.norm()).max(1.0))
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn forward_product_rule((f, g) in pair(2..80), b in boundary()) {
        let (f, g) = (SampledSequence::new(f, b), SampledSequence::new(g, b));
        let lhs = f.mul(&g).unwrap().apply(DiffOp::Forward).unwrap();
        let rhs = f.apply(DiffOp::Forward).unwrap().mul(&g.apply(DiffOp::ForwardAvg).unwrap()).unwrap()
            .add(&f.apply(DiffOp::ForwardAvg).unwrap().mul(&g.apply(DiffOp::Forward).unwrap()).unwrap()).unwrap();
        prop_assert!(max_rel(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn backward_product_rule((f, g) in pair(2..80), b in boundary()) {
        let (f, g) = (SampledSequence::new(f, b), SampledSequence::new(g, b));
        let lhs = f.mul(&g).unwrap().apply(DiffOp::Backward).unwrap();
        let rhs = f.apply(DiffOp::Backward).unwrap().mul(&g.apply(DiffOp::BackwardAvg).unwrap()).unwrap()
            .add(&f.apply(DiffOp::BackwardAvg).unwrap().mul(&g.apply(DiffOp::Backward).unwrap()).unwrap()).unwrap();
        prop_assert!(max_rel(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn operators_are_linear((f, g) in pair(2..40), a in complex(), c in complex(), b in boundary()) {
        let (f, g) = (SampledSequence::new(f, b), SampledSequence::new(g, b));
        for op in DiffOp::ALL {
            let lhs = f.scale(a).add(&g.scale(c)).unwrap().apply(op).unwrap();
            let rhs = f.apply(op).unwrap().scale(a).add(&g.apply(op).unwrap().scale(c)).unwrap();
            prop_assert!(max_rel(&lhs, &rhs) <= 1e-12, "{op:?}");
        }
    }

    #[test]
    fn periodic_forward_difference_telescopes((f, _) in pair(2..100)) {
        let scale: f64 = f.iter().map(|z| z.norm()).sum();
        let d = diffcalc::forward_diff(&SampledSequence::periodic(f)).unwrap();
        let total: Complex64 = d.values.iter().sum();
        prop_assert!(total.norm() <= 1e-14 * scale.max(1.0));
    }

    #[test]
    fn average_composition_is_quarter_stencil((f, _) in pair(3..50)) {
        let s = SampledSequence::shrinking(f.clone());
        let got = diffcalc::forward_avg(&diffcalc::backward_avg(&s).unwrap()).unwrap();
        for (i, z) in got.values.iter().enumerate() {
            let want = (f[i + 2] + 2.0 * f[i + 1] + f[i]) / 4.0;
            prop_assert!((z - want).norm() <= 1e-13 * want.norm().max(1.0));
        }
    }

    #[test]
    fn time_and_space_operators_commute(
        vals in prop::collection::vec(complex(), 6 * 7),
        t_op in prop::sample::select(DiffOp::ALL.to_vec()),
        s_op in prop::sample::select(DiffOp::ALL.to_vec()),
        b in boundary(),
    ) {
        let field = FieldSlab::new(GridSpec::natural(6, 7).with_boundary(b), vals).unwrap();
        let ts = apply_1d(&apply_1d(&field, Axis::SpaceJ, s_op).unwrap(), Axis::TimeN, t_op).unwrap();
        let st = apply_1d(&apply_1d(&field, Axis::TimeN, t_op).unwrap(), Axis::SpaceJ, s_op).unwrap();
        prop_assert!(ts.max_abs_diff(&st).unwrap() <= 1e-13);
    }
}

#[test]
fn separable_product_factorizes() {
    let a: Vec<f64> = (0..9).map(|n| (0.7 * n as f64).sin() + 0.1 * n as f64).collect();
    let b: Vec<f64> = (0..11).map(|j| (1.3 * j as f64).cos() * j as f64).collect();
    let grid = GridSpec::natural(9, 11).with_boundary(Boundary::Shrinking);
    let field = FieldSlab::from_fn(grid, |n, j| Complex64::new(a[n] * b[j], 0.0));
    let direct = apply_chain(
        &field,
        &[
            (Axis::TimeN, DiffOp::Forward),
            (Axis::TimeN, DiffOp::Backward),
            (Axis::SpaceJ, DiffOp::ForwardAvg),
            (Axis::SpaceJ, DiffOp::BackwardAvg),
        ],
    )
    .unwrap();
    let da = diffcalc::forward_diff(&diffcalc::backward_diff(&SampledSequence::from_real(&a, Boundary::Shrinking)).unwrap()).unwrap();
    let ab = diffcalc::forward_avg(&diffcalc::backward_avg(&SampledSequence::from_real(&b, Boundary::Shrinking)).unwrap()).unwrap();
    assert_eq!((direct.nt(), direct.nx()), (da.len(), ab.len()));
    for n in 0..da.len() {
        for j in 0..ab.len() {
            assert!((direct.get(n, j) - da.values[n] * ab.values[j]).norm() <= 1e-13);
        }
    }
}

#[test]
fn periodic_backward_difference_by_hand() {
    let f = SampledSequence::from_real(&[0.0, 1.0, 0.0, -1.0], Boundary::Periodic);
    let d = diffcalc::backward_diff(&f).unwrap();
    let re: Vec<f64> = d.values.iter().map(|z| z.re).collect();
    assert_eq!(re, vec![1.0, 1.0, -1.0, -1.0]);
}
