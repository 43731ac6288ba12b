use proptest::prelude::*;

use ldrcubic::counting;
use ldrcubic::detrep::{self, LinearMatrixRep};
use ldrcubic::gf::{Elem, Embedding, Field};
use ldrcubic::linalg::{self, Mat3};
use ldrcubic::plane::{self, LinearTransform, ProjPoint, TernaryCubic};
use ldrcubic::{io, parse, render};

const FIELDS: [(u64, u32); 10] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)];
/// Fields small enough for representation and equivalence checks.
const SMALL: [(u64, u32); 5] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)];

fn field((p, m): (u64, u32)) -> Field {
    Field::new(p, m, None).unwrap()
}

fn elem(f: &Field, i: u32) -> Elem {
    f.element_at(i % f.q()).unwrap()
}

fn matrix(f: &Field, idx: &[u32]) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| elem(f, idx[3 * i + j])))
}

fn invertible(f: &Field, idx: &[u32]) -> Option<Mat3> {
    let m = matrix(f, idx);
    (!linalg::det3(f, &m).is_zero()).then_some(m)
}

fn smooth_curve(fields: &'static [(u64, u32)]) -> impl Strategy<Value = TernaryCubic> {
    (0..fields.len(), prop::collection::vec(any::<u32>(), 10)).prop_filter_map("singular", move |(fi, idx)| {
        let f = field(fields[fi]);
        let coeffs: [Elem; 10] = std::array::from_fn(|k| elem(&f, idx[k]));
        let c = TernaryCubic::new(&f, coeffs).ok()?;
        plane::is_smooth(&c).then_some(c)
    })
}

fn matrices() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 18)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(fi in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(FIELDS[fi]);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul_add(a, b, c), f.add(a, f.mul(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
            prop_assert_eq!(f.div(f.mul(a, b), a), b);
        } else {
            prop_assert_eq!(f.try_inv(a), None);
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
    }

    #[test]
    fn embeddings_are_homomorphisms(pair in 0..3usize, a in any::<u32>(), b in any::<u32>()) {
        let (s, t) = [((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3))][pair];
        let (s, t) = (field(s), field(t));
        let e = Embedding::new(&s, &t).unwrap();
        let (a, b) = (elem(&s, a), elem(&s, b));
        prop_assert_eq!(e.map(s.add(a, b)), t.add(e.map(a), e.map(b)));
        prop_assert_eq!(e.map(s.mul(a, b)), t.mul(e.map(a), e.map(b)));
        prop_assert_eq!(e.map(Elem::ONE), Elem::ONE);
    }

    #[test]
    fn action_composes(c in smooth_curve(&SMALL), idx in matrices()) {
        let f = c.field().clone();
        let (Some(s), Some(t)) = (invertible(&f, &idx[..9]), invertible(&f, &idx[9..])) else { return Ok(()) };
        let (s, t) = (LinearTransform::new(&f, s).unwrap(), LinearTransform::new(&f, t).unwrap());
        let once = plane::act(&t.compose(&s), &c).unwrap();
        let twice = plane::act(&s, &plane::act(&t, &c).unwrap()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(plane::is_smooth(&once));
        let moved = plane::rational_points(&once);
        prop_assert_eq!(moved.len(), plane::rational_points(&c).len());
        for p in &moved {
            prop_assert!(plane::evaluate(&c, &t.compose(&s).apply(p)).is_zero());
        }
    }

    #[test]
    fn hasse_weil(c in smooth_curve(&FIELDS)) {
        let q = c.field().q() as i64;
        let n = plane::rational_points(&c).len() as i64;
        prop_assert!((n - q - 1).pow(2) <= 4 * q, "{} points over F_{}", n, q);
    }

    #[test]
    fn normalization(c in smooth_curve(&SMALL), pick in any::<usize>()) {
        let points = plane::rational_points(&c);
        prop_assume!(!points.is_empty());
        let p0 = points[pick % points.len()];
        let (t, fn_) = plane::normalize(&c, &p0).unwrap();
        prop_assert!(plane::is_normalized(&fn_));
        prop_assert!(plane::act(&t, &c).unwrap().ratio_to(&fn_).is_some());
        prop_assert_eq!(t.apply(&ProjPoint::base_point()), p0);
        let inv = t.inverse();
        for p in &points {
            prop_assert!(plane::evaluate(&fn_, &inv.apply(p)).is_zero());
        }
        prop_assert_eq!(plane::is_flex(&c, &p0).unwrap(), plane::is_flex(&fn_, &ProjPoint::base_point()).unwrap());
    }

    #[test]
    fn representations_of_every_point(c in smooth_curve(&SMALL)) {
        let points = plane::rational_points(&c);
        let reps = detrep::all_reps(&c, None);
        if points.is_empty() {
            prop_assert_eq!(reps, Err(detrep::DetRepError::NoRationalPoint));
            return Ok(());
        }
        let reps = reps.unwrap();
        prop_assert_eq!(reps.len() + 1, points.len());
        for r in &reps {
            prop_assert_eq!(detrep::is_ldr_of(&r.rep, &c), Some(r.lambda.clone()));
            prop_assert!(r.rep.at(r.point.coords()).iter().flatten().any(|e| !e.is_zero()));
        }
    }

    #[test]
    fn equivalence_is_symmetric(c in smooth_curve(&SMALL), pick in any::<usize>(), idx in matrices()) {
        let f = c.field().clone();
        let reps = detrep::all_reps(&c, None).unwrap_or_default();
        prop_assume!(!reps.is_empty());
        let (Some(a), Some(b)) = (invertible(&f, &idx[..9]), invertible(&f, &idx[9..])) else { return Ok(()) };
        let m = &reps[pick % reps.len()].rep;
        let n = m.transform(&a, &b);
        let w = detrep::equivalent(m, &n).unwrap().expect("A M B is equivalent to M");
        prop_assert!(w.check(m, &n));
        prop_assert!(w.inverse(&f).check(&n, m));
        let back = detrep::equivalent(&n, m).unwrap().expect("equivalence is symmetric");
        prop_assert!(back.check(&n, m));
        prop_assert_eq!(detrep::rank_profile(m), detrep::rank_profile(&n));
    }

    #[test]
    fn base_point_independence(c in smooth_curve(&SMALL), pick in any::<usize>()) {
        let points = plane::rational_points(&c);
        prop_assume!(points.len() >= 2);
        let other = points[1 + pick % (points.len() - 1)];
        let first = detrep::all_reps(&c, None).unwrap();
        let second = detrep::all_reps(&c, Some(&other)).unwrap();
        prop_assert_eq!(first.len(), second.len());
        for r in &second {
            let mut hits = 0;
            for s in &first {
                if detrep::equivalent(&s.rep, &r.rep).unwrap().is_some() {
                    hits += 1;
                }
            }
            prop_assert_eq!(hits, 1);
        }
    }

    #[test]
    fn text_and_json_round_trip(c in smooth_curve(&FIELDS)) {
        let f = c.field();
        prop_assert_eq!(&parse::cubic(f, &render::cubic(&c)).unwrap(), &c);
        prop_assert_eq!(&io::cubic_from_json(&io::cubic_to_json(&c)).unwrap(), &c);
        for p in plane::rational_points(&c).iter().take(4) {
            prop_assert_eq!(&parse::point(f, &render::point(f, p)).unwrap(), p);
            prop_assert_eq!(&io::point_from_json(f, &io::point_to_json(f, p)).unwrap(), p);
        }
        if f.q() <= 7 {
            for r in detrep::all_reps(&c, None).unwrap_or_default().iter().take(2) {
                let text = render::linear_matrix(f, r.rep.entries());
                prop_assert_eq!(&parse::linear_matrix(f, &text).unwrap(), &r.rep);
                prop_assert_eq!(&io::rep_from_json(&io::rep_to_json(&r.rep)).unwrap(), &r.rep);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The nullspace method against brute-force search over `GL_3(F_2)`.
    #[test]
    fn two_routes_agree_over_f2(c in smooth_curve(&[(2, 1)]), idx in matrices()) {
        let f = c.field().clone();
        let reps: Vec<LinearMatrixRep> = detrep::all_reps(&c, None).unwrap_or_default().into_iter().map(|r| r.rep).collect();
        let cap = linalg::gl3_order(2);
        let mut candidates = reps.clone();
        if let (Some(a), Some(b), Some(m)) = (invertible(&f, &idx[..9]), invertible(&f, &idx[9..]), reps.first()) {
            candidates.push(m.transform(&a, &b));
        }
        for m in &reps {
            for n in &candidates {
                let fast = detrep::equivalent(m, n).unwrap();
                let slow = detrep::equivalent_by_search(m, n, cap).unwrap();
                prop_assert_eq!(fast.is_some(), slow.is_some());
                if let Some(w) = slow {
                    prop_assert!(w.check(m, n));
                }
            }
        }
    }
}

#[test]
fn class_counts_are_never_negative() {
    let mut fields = 0;
    for q in 2..=256u64 {
        if ldrcubic::gf::prime_power(q).is_none() {
            continue;
        }
        let top = q as i64 + 1 + (4.0 * q as f64).sqrt().floor() as i64;
        for n in 0..=top + 1 {
            let r = counting::cubics_with_points(q, n).unwrap_or_else(|e| panic!("q = {q}, n = {n}: {e}"));
            assert!(r.total >= 0);
        }
        fields += 1;
    }
    assert!(fields > 50);
}

#[test]
fn no_cubics_beyond_the_hasse_bound() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49] {
        let top = q as i64 + 1 + (4.0 * q as f64).sqrt().floor() as i64;
        assert_eq!(counting::cubics_with_points(q, top + 1).unwrap().total, 0, "q = {q}");
    }
}
