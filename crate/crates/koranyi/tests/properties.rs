//! Property-based invariants across the crate: parser totality, printing
//! round trips, differentiation against finite differences, metric axioms
//! and sampler postconditions.

use koranyi::derivatives::directional_split;
use koranyi::expr::{parse, Expr, FnHandle, Func};
use koranyi::geometry::DomainModel;
use koranyi::regions::{sample_region, RegionFamily, RegionSpec};
use koranyi::{chordal_distance, CVec, ExtComplex, C64};
use proptest::prelude::*;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn parser_totality_fuzz() {
    // Any byte soup either parses or returns a located error; no panics.
    let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
    let alphabet: &[u8] = b"z12+-*/^() iexpsinco.eE3\t\\~#";
    for _ in 0..100_000 {
        let len = (rng.next_u32() % 24) as usize;
        let bytes: Vec<u8> = (0..len)
            .map(|_| alphabet[(rng.next_u32() as usize) % alphabet.len()])
            .collect();
        let src = String::from_utf8(bytes).unwrap();
        match parse::<f64>(&src, 2) {
            Ok(_) => {}
            Err(e) => assert!(e.offset <= src.len()),
        }
    }
}

fn leaf() -> impl Strategy<Value = Expr<f64>> {
    prop_oneof![
        (0.0..10.0f64).prop_map(Expr::Num),
        Just(Expr::I),
        (0usize..2).prop_map(Expr::Var),
    ]
}

fn expr_tree() -> impl Strategy<Value = Expr<f64>> {
    leaf().prop_recursive(5, 64, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -4i32..7).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (inner.clone(), prop_oneof![Just(Func::Exp), Just(Func::Sin), Just(Func::Cos)])
                .prop_map(|(a, f)| Expr::Call(f, Box::new(a))),
        ]
    })
}

proptest! {
    /// Printing is fully parenthesized: reparsing gives the same tree.
    #[test]
    fn print_reparse_round_trip(e in expr_tree()) {
        let printed = format!("{e}");
        let back: Expr<f64> = parse(&printed, 2).expect("printed exprs reparse");
        prop_assert_eq!(e, back);
    }

    /// Chordal distance is symmetric, bounded by 1 and triangular.
    #[test]
    fn chordal_metric_axioms(
        a in any::<(f64, f64)>(),
        b in any::<(f64, f64)>(),
        c in any::<(f64, f64)>(),
        inf_mask in 0u8..8,
    ) {
        let lift = |(re, im): (f64, f64), inf: bool| -> ExtComplex<f64> {
            if inf || !re.is_finite() || !im.is_finite() {
                ExtComplex::Infinity
            } else {
                ExtComplex::finite(re % 1e100, im % 1e100)
            }
        };
        let x = lift(a, inf_mask & 1 != 0);
        let y = lift(b, inf_mask & 2 != 0);
        let z = lift(c, inf_mask & 4 != 0);
        let xy = chordal_distance(x, y);
        let yx = chordal_distance(y, x);
        prop_assert!((xy - yx).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&xy));
        prop_assert!(chordal_distance(x, x) == 0.0);
        prop_assert!(chordal_distance(x, z) <= xy + chordal_distance(y, z) + 1e-12);
    }

    /// Hermitian product: conjugate symmetry and linearity in the first slot.
    #[test]
    fn hermitian_inner_axioms(
        u in prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 3),
        v in prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 3),
        s in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let lift = |v: Vec<(f64, f64)>| CVec::new(v.into_iter().map(|(re, im)| C64::new(re, im)).collect());
        let u = lift(u);
        let v = lift(v);
        let s = C64::new(s.0, s.1);
        let uv = u.hermitian_inner(&v).unwrap();
        let vu = v.hermitian_inner(&u).unwrap();
        prop_assert!((uv - vu.conj()).norm() < 1e-12);
        let su_v = u.scale(s).hermitian_inner(&v).unwrap();
        prop_assert!((su_v - uv * s).norm() < 1e-12);
        prop_assert!(u.hermitian_inner(&u).unwrap().im.abs() < 1e-12);
    }

    /// Jet gradients of random pole-free expressions match central
    /// finite differences.
    #[test]
    fn jets_match_finite_differences(
        e in expr_tree(),
        z in prop::collection::vec((-0.4..0.4f64, -0.4..0.4f64), 2),
    ) {
        let handle = match FnHandle::new(e, 2) {
            Ok(h) => h,
            Err(_) => return Ok(()),
        };
        let z = CVec::new(z.into_iter().map(|(re, im)| C64::new(re, im)).collect());
        let Ok(jet) = handle.eval_jet(&z) else { return Ok(()) };
        // Keep clear of poles and overflow: probe a small neighborhood.
        let h = 1e-5;
        let mut ok = true;
        let mut fd = Vec::new();
        for j in 0..2 {
            let eval = |p: &CVec<f64>| handle.eval_value(p);
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp.entries_mut()[j] = z[j] + C64::new(h, 0.0);
            zm.entries_mut()[j] = z[j] - C64::new(h, 0.0);
            let (Ok(vx1), Ok(vx0)) = (eval(&zp), eval(&zm)) else { ok = false; break };
            zp.entries_mut()[j] = z[j] + C64::new(0.0, h);
            zm.entries_mut()[j] = z[j] - C64::new(0.0, h);
            let (Ok(vy1), Ok(vy0)) = (eval(&zp), eval(&zm)) else { ok = false; break };
            let dx = (vx1 - vx0) / C64::new(2.0 * h, 0.0);
            let dy = (vy1 - vy0) / C64::new(2.0 * h, 0.0);
            fd.push((dx - dy * C64::new(0.0, 1.0)) * C64::new(0.5, 0.0));
        }
        if !ok { return Ok(()); }
        for (a, b) in jet.grad.entries().iter().zip(fd.iter()) {
            let scale = a.norm().max(1.0);
            // FD truncation on wild random trees can reach ~1e-6 relative.
            if a.norm() < 1e6 && b.norm() < 1e6 {
                prop_assert!(
                    (a - b).norm() / scale < 5e-4,
                    "jet {a} vs fd {b}"
                );
            }
        }
    }

    /// Region samples always satisfy the membership predicate and the
    /// boundary-distance window they were asked for.
    #[test]
    fn sampler_postconditions(
        family_id in 0usize..3,
        aperture in 1.2..6.0f64,
        d_exp in -5.0..-2.0f64,
        seed in any::<u64>(),
    ) {
        let d_target = 10f64.powf(d_exp);
        let (family, domain, xi) = match family_id {
            0 => (
                RegionFamily::DiscStolz,
                DomainModel::unit_ball(1),
                CVec::new(vec![C64::new(1.0, 0.0)]),
            ),
            1 => (
                RegionFamily::BallKoranyi,
                DomainModel::unit_ball(2),
                CVec::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
            ),
            _ => (
                RegionFamily::RealAdapted,
                DomainModel::unit_ball(2),
                CVec::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
            ),
        };
        let region = RegionSpec::new(family, aperture, xi, domain.clone()).unwrap();
        let Ok(rep) = sample_region(&region, d_target, 4, seed) else { return Ok(()) };
        for z in &rep.points {
            prop_assert!(region.contains(z));
            let delta = domain.boundary_distance(z).unwrap();
            prop_assert!(delta >= 0.5 * d_target && delta <= 2.0 * d_target);
        }
    }
}

#[test]
fn directional_split_ignores_tangent_phases() {
    // 100 random re-phasings of the tangent columns leave both directional
    // magnitudes unchanged.
    let ball = DomainModel::unit_ball(2);
    let f: FnHandle<f64> = FnHandle::new(parse("z2^2/(1-z1)+z1*z2", 2).unwrap(), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let z = CVec::new(vec![C64::new(0.8, 0.05), C64::new(0.3, -0.2)]);
    let (xi, _) = ball.nearest_boundary_point(&z).unwrap();
    let frame = ball.boundary_frame(&xi).unwrap();
    let jet = f.eval_jet(&z).unwrap();
    let (n0, t0) = directional_split(&jet.grad, &frame);
    for _ in 0..100 {
        let phases = vec![rng.gen::<f64>() * std::f64::consts::TAU];
        let rotated = frame.rephased(&phases);
        assert!(rotated.unitarity_defect() < 1e-12);
        let (n, t) = directional_split(&jet.grad, &rotated);
        assert!((n - n0).abs() < 1e-13);
        assert!((t - t0).abs() < 1e-13);
    }
}

#[test]
fn nabla_functional_is_unitary_invariant() {
    // Rotating the ambient space by a unitary (which maps the ball to
    // itself) moves z, the vertex and the gradient coherently; the
    // anisotropic functional must not change.
    use koranyi::derivatives::nabla_from_parts;
    let ball = DomainModel::unit_ball(2);
    let f: FnHandle<f64> = FnHandle::new(parse("z2^2/(1-z1)+z1^3", 2).unwrap(), 2).unwrap();
    let xi = CVec::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let z = CVec::new(vec![C64::new(0.93, 0.01), C64::new(0.12, -0.08)]);
    let jet = f.eval_jet(&z).unwrap();

    let chart = ball.vertex_chart(&xi).unwrap();
    let d = chart.d_of(&z).unwrap();
    let frame = ball.boundary_frame(&xi).unwrap();
    let (n, t) = directional_split(&jet.grad, &frame);
    let q = nabla_from_parts(d, n, t);

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..25 {
        // A random unitary, built as the adapted frame of a random normal.
        let raw = CVec::new(vec![
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ]);
        let Some(nu) = raw.normalized() else { continue };
        let q_mat = koranyi::geometry::BoundaryFrame::from_normal(CVec::zeros(2), nu);
        // rho(w) = Q* w maps the configuration; gradients pick up Q^T.
        let xi_rot = q_mat.apply_adjoint(&xi);
        let z_rot = q_mat.apply_adjoint(&z);
        let grad_rot = q_mat.apply_transpose(&jet.grad);

        let chart_rot = ball.vertex_chart(&xi_rot).unwrap();
        let d_rot = chart_rot.d_of(&z_rot).unwrap();
        let frame_rot = ball.boundary_frame(&xi_rot).unwrap();
        let (n_rot, t_rot) = directional_split(&grad_rot, &frame_rot);
        let q_rot = nabla_from_parts(d_rot, n_rot, t_rot);

        assert!((d - d_rot).abs() < 1e-12, "d changed: {d} vs {d_rot}");
        assert!(
            (q - q_rot).abs() < 1e-12 * q.max(1.0),
            "functional changed: {q} vs {q_rot}"
        );
    }
}

#[test]
fn graph_projection_matches_grid_oracle() {
    // Brute-force oracle: iterated grid refinement of the squared distance
    // to the graph, independent of the Newton path under test.
    let (psi, k) = koranyi::geometry::builtin_psi::<f64>("paraboloid", 3).unwrap();
    let psi_for_oracle = psi.clone();
    let psi_val = move |zeta: &[f64]| psi_for_oracle.value(zeta);
    let dom = DomainModel::graph(2, psi, k).unwrap();

    let objective = |x1: f64, zeta0: &[f64], zeta: &[f64]| -> f64 {
        let dpsi = psi_val(zeta) - x1;
        let mut s = dpsi * dpsi;
        for (a, b) in zeta.iter().zip(zeta0) {
            s += (a - b) * (a - b);
        }
        s
    };
    let grid_oracle = |x1: f64, zeta0: &[f64]| -> f64 {
        let mut center = zeta0.to_vec();
        let mut half = 1.0f64;
        let mut best = f64::INFINITY;
        for _ in 0..9 {
            let mut best_pt = center.clone();
            let steps = 7usize;
            for a in 0..steps {
                for b in 0..steps {
                    for c in 0..steps {
                        let pt = [
                            center[0] + half * (2.0 * a as f64 / (steps - 1) as f64 - 1.0),
                            center[1] + half * (2.0 * b as f64 / (steps - 1) as f64 - 1.0),
                            center[2] + half * (2.0 * c as f64 / (steps - 1) as f64 - 1.0),
                        ];
                        let v = objective(x1, zeta0, &pt);
                        if v < best {
                            best = v;
                            best_pt = pt.to_vec();
                        }
                    }
                }
            }
            center = best_pt;
            half /= 3.0;
        }
        best.sqrt()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut checked = 0;
    while checked < 100 {
        let x1 = 0.02 + rng.gen::<f64>() * 0.35;
        let zeta0 = [
            (rng.gen::<f64>() * 2.0 - 1.0) * 0.35,
            (rng.gen::<f64>() * 2.0 - 1.0) * 0.35,
            (rng.gen::<f64>() * 2.0 - 1.0) * 0.35,
        ];
        let z = CVec::new(vec![C64::new(x1, zeta0[0]), C64::new(zeta0[1], zeta0[2])]);
        if !dom.contains(&z) {
            continue;
        }
        let (_, delta) = dom.nearest_boundary_point(&z).unwrap();
        let oracle = grid_oracle(x1, &zeta0);
        assert!(
            (delta - oracle).abs() < 1e-6,
            "projection {delta} vs grid oracle {oracle} at {z}"
        );
        checked += 1;
    }
}

#[test]
fn f32_lane_compiles_and_agrees_coarsely() {
    // The whole stack is generic over the scalar; spot-check that the f32
    // instantiation produces the same leading digits.
    let z64 = koranyi::regions::paper_parabola::<f64>(100).unwrap();
    let z32 = koranyi::regions::paper_parabola::<f32>(100).unwrap();
    assert!((z64[0].re as f32 - z32[0].re).abs() < 1e-6);
    let f64h: FnHandle<f64> = koranyi::catalog("paper_counterexample").unwrap();
    let f32h: FnHandle<f32> = koranyi::catalog("paper_counterexample").unwrap();
    let v64 = f64h.eval_value(&z64).unwrap();
    let v32 = f32h.eval_value(&z32).unwrap();
    assert!((v64.re as f32 - v32.re).abs() < 1e-3);

    let ball32: DomainModel<f32> = DomainModel::unit_ball(2);
    let xi32 = CVec::new(vec![
        num_complex::Complex::new(1.0f32, 0.0),
        num_complex::Complex::new(0.0f32, 0.0),
    ]);
    let region =
        RegionSpec::new(RegionFamily::RealAdapted, 3.0f32, xi32, ball32).unwrap();
    assert!(region.contains(&z32));
}
