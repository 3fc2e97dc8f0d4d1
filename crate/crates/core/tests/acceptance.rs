//! One line per acceptance criterion. Every check is exact over ℚ.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num::{One, Zero};
use rand::RngExt;
use weilkit::algebra::{q, q_frac, Rational};
use weilkit::bott_tu::{bott_tu_connection, product_model, BottTu, H};
use weilkit::chern_weil::*;
use weilkit::fat::{simplex_integral, FatRealization};
use weilkit::gda::{curvature, is_connection};
use weilkit::groupoid::*;
use weilkit::lie::LieAlgebraData;
use weilkit::sample;
use weilkit::simplicial::{BigradedElement, SimplicialGda, SimplicialHom};
use weilkit::weil::{canonical_connection, evaluate_invariant, weil_algebra, InvariantPolynomial};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lie_fixtures() -> Vec<LieAlgebraData> {
    vec![
        LieAlgebraData::u1(),
        LieAlgebraData::abelian(2),
        LieAlgebraData::so3(),
        LieAlgebraData::sl2(),
        LieAlgebraData::heisenberg(),
    ]
}

fn cw_fixtures() -> Vec<(LieAlgebraData, InvariantPolynomial)> {
    let u1 = LieAlgebraData::u1();
    let xi = InvariantPolynomial::coordinate(&u1, 0).unwrap();
    let so3 = LieAlgebraData::so3();
    let sl2 = LieAlgebraData::sl2();
    vec![
        (u1.clone(), xi.clone()),
        (u1, xi.mul(&xi)),
        (so3.clone(), InvariantPolynomial::killing(&so3).unwrap()),
        (sl2.clone(), InvariantPolynomial::killing(&sl2).unwrap()),
    ]
}

fn name(l: &LieAlgebraData) -> String {
    l.name().unwrap_or("?").to_string()
}

fn weil_axioms() -> Outcome {
    let mut worst = 0.0f64;
    for lie in lie_fixtures() {
        let start = Instant::now();
        let w = weil_algebra(&lie);
        let r = w.validate_presentation(8);
        ensure(r.passed, format!("{}: {:?}", name(&lie), r.first_failure))?;
        let c = is_connection(&w, &canonical_connection(&w)).map_err(|e| e.to_string())?;
        ensure(c.is_connection, format!("{}: η is not a connection", name(&lie)))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 10.0, format!("{} took {secs:.1}s", name(&lie)))?;
        worst = worst.max(secs);
    }
    Ok(format!("5 Weil algebras valid through degree 8, slowest {worst:.2}s"))
}

fn cosimplicial_identities() -> Outcome {
    for lie in [LieAlgebraData::u1(), LieAlgebraData::so3(), LieAlgebraData::heisenberg()] {
        let s = SimplicialGda::tensor_power(&weil_algebra(&lie));
        s.check_cosimplicial(4).map_err(|e| format!("{}: {e}", name(&lie)))?;
        s.check_structure_maps(4).map_err(|e| format!("{}: {e}", name(&lie)))?;
    }
    let groupoids = [
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)),
        FiniteGroupoid::from_group(&FiniteGroup::symmetric(3)),
        FiniteGroupoid::pair(3),
        FiniteGroupoid::discrete(2),
    ];
    for g in &groupoids {
        nerve(g, 4).check_identities().map_err(|e| e.to_string())?;
    }
    Ok("3 Weil towers and 4 nerves through level 4".into())
}

fn double_complex_laws() -> Outcome {
    let mut rng = sample::rng(2024);
    let mut count = 0;
    for lie in [LieAlgebraData::u1(), LieAlgebraData::so3()] {
        let s = SimplicialGda::tensor_power(&weil_algebra(&lie));
        for i in 0..100 {
            let deg = 1 + (i % 3) as u32;
            let x = sample::bigraded(&s, deg, 2, 3, &mut rng);
            ensure(s.delta(&s.delta(&x)).is_zero(), format!("{}: δ² ≠ 0", name(&lie)))?;
            let a = sample::bigraded(&s, 1 + (i % 2) as u32, 1, 2, &mut rng);
            let b = sample::bigraded(&s, 1, 1, 2, &mut rng);
            let c = sample::bigraded(&s, 1, 1, 2, &mut rng);
            ensure(s.cup(&s.cup(&a, &b), &c) == s.cup(&a, &s.cup(&b, &c)), format!("{}: cup not associative", name(&lie)))?;
            let da = a.total_degree().unwrap_or(0);
            let sign = if da.is_multiple_of(2) { q(1) } else { q(-1) };
            let lhs = s.delta(&s.cup(&a, &b));
            let rhs = s.cup(&s.delta(&a), &b).add(&s.cup(&a, &s.delta(&b)).scale(&sign));
            ensure(lhs == rhs, format!("{}: Leibniz fails", name(&lie)))?;
            count += 1;
        }
    }
    for g in [FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)), FiniteGroupoid::from_group(&FiniteGroup::symmetric(3))] {
        let n = nerve(&g, 4);
        for i in 0..100u64 {
            let rand = |level: usize, rng: &mut sample::SampleRng| Cochain {
                level,
                values: (0..n.size(level)).map(|_| q(rng.random_range(-4..=4))).collect(),
            };
            let (p, r) = ((i % 2) as usize, ((i / 2) % 2) as usize);
            let a = rand(p, &mut rng);
            let b = rand(r, &mut rng);
            let c = rand(1, &mut rng);
            ensure(coboundary(&n, &coboundary(&n, &a)).is_zero(), "groupoid ∂² ≠ 0")?;
            ensure(cup(&n, &cup(&n, &a, &b), &c) == cup(&n, &a, &cup(&n, &b, &c)), "groupoid cup not associative")?;
            let sign = if p % 2 == 0 { q(1) } else { q(-1) };
            let rhs = cup(&n, &coboundary(&n, &a), &b).add(&cup(&n, &a, &coboundary(&n, &b)).scale(&sign));
            ensure(coboundary(&n, &cup(&n, &a, &b)) == rhs, "groupoid Leibniz fails")?;
            count += 1;
        }
    }
    Ok(format!("{count} samples over 2 Weil towers and 2 nerves (100 per fixture)"))
}

/// `∫_{Δ_n} t^a dt` by integrating one coordinate at a time against the upper
/// limit `1 - t_1 - … - t_{k-1}`, with polynomials as exponent maps.
fn iterated_integral(a: &[u32]) -> Rational {
    type Poly = BTreeMap<Vec<u32>, Rational>;
    let n = a.len();
    let mul = |x: &Poly, y: &Poly| {
        let mut out = Poly::new();
        for (ex, cx) in x {
            for (ey, cy) in y {
                let e: Vec<u32> = ex.iter().zip(ey).map(|(p, r)| p + r).collect();
                *out.entry(e).or_insert_with(Rational::zero) += cx * cy;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut p: Poly = BTreeMap::from([(a.to_vec(), Rational::one())]);
    for k in (0..n).rev() {
        let mut limit = Poly::new();
        limit.insert(vec![0; n], Rational::one());
        for j in 0..k {
            let mut e = vec![0; n];
            e[j] = 1;
            limit.insert(e, -Rational::one());
        }
        let mut out = Poly::new();
        for (e, c) in &p {
            let power = e[k] + 1;
            let mut rest = e.clone();
            rest[k] = 0;
            let mut term: Poly = BTreeMap::from([(rest, c / Rational::from_integer(power.into()))]);
            for _ in 0..power {
                term = mul(&term, &limit);
            }
            for (e2, c2) in term {
                *out.entry(e2).or_insert_with(Rational::zero) += c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        p = out;
    }
    p.get(&vec![0; n]).cloned().unwrap_or_else(Rational::zero)
}

fn exponent_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in exponent_vectors(n - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn integration_chain_map() -> Outcome {
    let mut integrals = 0;
    for n in 1..=3 {
        for a in exponent_vectors(n, 4) {
            ensure(simplex_integral(&a) == iterated_integral(&a), format!("integral of t^{a:?} on Δ_{n}"))?;
            integrals += 1;
        }
    }
    let mut rng = sample::rng(99);
    let mut samples = 0;
    for lie in [LieAlgebraData::u1(), LieAlgebraData::so3()] {
        let s = SimplicialGda::tensor_power(&weil_algebra(&lie));
        let fr = FatRealization::new(&s);
        let top = 3;
        let a0 = s.table(0);
        while samples < if lie.dim() == 1 { 30 } else { 60 } {
            // products of lifts of level-0 elements, possibly differentiated
            let factors = rng.random_range(1..=2);
            let mut x = fr.constant(&q(rng.random_range(1..=3)), top);
            for _ in 0..factors {
                let deg = rng.random_range(1..=2);
                let alpha = sample::homogeneous(&a0, deg, 2, &mut rng);
                x = x.mul(&fr.lift(&alpha, top));
            }
            if rng.random_bool(0.3) {
                x = fr.total_differential(&x);
            }
            fr.check_compatibility(&x).map_err(|e| format!("sample not compatible: {e:?}"))?;
            let lhs = fr.integrate(&fr.total_differential(&x));
            let rhs = s.delta_truncated(&fr.integrate(&x), top);
            ensure(lhs == rhs, format!("{}: I(Dx) ≠ δ(Ix)", name(&lie)))?;
            samples += 1;
        }
    }
    Ok(format!("{samples} compatible samples through level 3; {integrals} simplex integrals match the iterated oracle"))
}

fn construction_coincidence() -> Outcome {
    let start = Instant::now();
    for (lie, f) in cw_fixtures() {
        let pc = PseudoConnection::canonical(&lie);
        let a = z_theta_fat(&pc, &f).map_err(|e| e.to_string())?;
        let b = z_theta_simplicial(&pc, &f).map_err(|e| e.to_string())?;
        ensure(a == b, format!("{} degree {}: constructions differ", name(&lie), f.degree()))?;
        ensure(pc.host().delta(&a).is_zero(), "cocycle not closed")?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("4 fixtures agree exactly in {secs:.2}s"))
}

fn bianchi() -> Outcome {
    for (lie, _) in cw_fixtures() {
        let pc = PseudoConnection::canonical(&lie);
        ensure(check_bianchi(&pc).holds, format!("{}: Bianchi fails", name(&lie)))?;
    }
    let (_, host) = weil_pair_host(&LieAlgebraData::sl2());
    let theta = pair_copy(&host, "a").unwrap().add(&pair_copy(&host, "b").unwrap()).scale(&q_frac(1, 2));
    let pc = PseudoConnection::new(&host, theta).map_err(|e| e.to_string())?;
    ensure(check_bianchi(&pc).holds, "perturbed sl2: Bianchi fails")?;
    Ok("u1, so3, sl2 and a perturbed sl2 connection".into())
}

fn connection_case() -> Outcome {
    let lie = LieAlgebraData::so3();
    let w = weil_algebra(&lie);
    let host = SimplicialGda::constant(&w);
    let theta = canonical_connection(&w).map(|x| host.embed_base(0, x));
    let pc = PseudoConnection::new(&host, theta).map_err(|e| e.to_string())?;
    ensure(total_curvature(&pc).is_connection_case(), "∂θ ≠ 0")?;
    let f = InvariantPolynomial::killing(&lie).unwrap();
    let z = z_theta_fat(&pc, &f).map_err(|e| e.to_string())?;
    let want = evaluate_invariant(&f, &curvature(&host.alg(0), pc.theta())).map_err(|e| e.to_string())?;
    ensure(z == BigradedElement::at(0, want), "cocycle is not f(Ω) at level 0")?;
    Ok("so3 Killing class on the constant tower is f(Ω) at level 0".into())
}

fn functoriality() -> Outcome {
    let lie = LieAlgebraData::so3();
    let f = InvariantPolynomial::killing(&lie).unwrap();
    let pc = PseudoConnection::canonical(&lie);
    let m = vec![vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)], vec![q(0), q(0), q(-1)]];
    // intertwines the actions only up to the twist, so it is not checked as a
    // map of G-differential algebras
    let (phi, twist) = lie_automorphism_map(&pc, &m).map_err(|e| e.to_string())?;
    let r = check_functoriality(&phi, &pc, &f, Some(&twist)).map_err(|e| e.to_string())?;
    ensure(r.holds, "automorphism")?;

    let (_, host) = weil_pair_host(&lie);
    let collapse = collapse_map(&host).map_err(|e| e.to_string())?;
    collapse.check(2).map_err(|e| e.to_string())?;
    let theta = pair_copy(&host, "a").unwrap().add(&pair_copy(&host, "b").unwrap()).scale(&q_frac(1, 2));
    let pc = PseudoConnection::new(&host, theta).map_err(|e| e.to_string())?;
    ensure(check_functoriality(&collapse, &pc, &f, None).map_err(|e| e.to_string())?.holds, "collapse")?;
    ensure(
        check_functoriality(&SimplicialHom::identity(&host), &pc, &f, None).map_err(|e| e.to_string())?.holds,
        "identity",
    )?;
    Ok("so3 Killing: automorphism X1↔X2, X3↦-X3 and the collapse of W(g)⊗W(g)".into())
}

fn independence() -> Outcome {
    let lie = LieAlgebraData::u1();
    let (_, host) = weil_pair_host(&lie);
    let pc1 = PseudoConnection::new(&host, pair_copy(&host, "a").unwrap()).map_err(|e| e.to_string())?;
    let pc2 = PseudoConnection::new(&host, pair_copy(&host, "b").unwrap()).map_err(|e| e.to_string())?;
    let xi = InvariantPolynomial::coordinate(&lie, 0).unwrap();
    let window = Window { level_bound: 2, degree_bound: 2 };
    let x = certify_connection_independence(&pc1, &pc2, &xi, window).map_err(|e| e.to_string())?;
    let diff = z_theta_fat(&pc1, &xi).unwrap().sub(&z_theta_fat(&pc2, &xi).unwrap());
    ensure(!diff.is_zero() && host.delta(&x) == diff, "primitive does not bound the difference")?;
    let small = certify_connection_independence(&pc1, &pc2, &xi, Window { level_bound: 1, degree_bound: 2 });
    ensure(matches!(small, Err(weilkit::Error::WindowIncomplete(_))), "small window was not reported")?;
    Ok("u1 with two copies of η: primitive found in window (2, 2); window (1, 2) reports incomplete".into())
}

fn bott_tu_fixtures() -> Vec<(BottTu, LieAlgebraData)> {
    let u1 = LieAlgebraData::u1();
    let ab = LieAlgebraData::abelian(2);
    let (a, t) = product_model(&u1, &LieAlgebraData::heisenberg(), &[vec![q(1), q(2), q(0)]]).unwrap();
    let (b, s) = product_model(&ab, &u1, &[vec![q(1)], vec![q(-3)]]).unwrap();
    vec![(bott_tu_connection(&a, &t).unwrap(), u1), (bott_tu_connection(&b, &s).unwrap(), ab)]
}

fn bott_tu() -> Outcome {
    let mut rng = sample::rng(10);
    let mut samples = 0;
    for (bt, g) in bott_tu_fixtures() {
        let r = bt.check().map_err(|e| e.to_string())?;
        ensure(r.g_connection && r.h_basic, format!("{r:?}"))?;
        let total = bt.total();
        let s = bt.simplicial();
        for degree in 1..=3 {
            let basis = total.basic_subspace_in(&[H], degree).map_err(|e| e.to_string())?;
            if basis.is_empty() {
                continue;
            }
            for _ in 0..10 {
                let x = sample::combination(total.table(), &basis, &mut rng);
                let kx = bt.k_map(&x);
                ensure(s.is_basic_in(H, &kx), "K(x) is not H-basic")?;
                ensure(bt.k_map(&total.d(&x)) == s.delta(&kx), "K is not a chain map")?;
                samples += 1;
            }
        }
        let f = InvariantPolynomial::sum_of_squares(&g).unwrap();
        let z = bt.z_bt(&f).map_err(|e| e.to_string())?;
        ensure(s.delta(&bt.k_map(&z)).is_zero(), "K(z_BT) is not closed")?;
    }
    ensure(samples >= 50, format!("only {samples} samples"))?;
    Ok(format!("Heisenberg and abelian models; {samples} H-basic chain-map samples"))
}

fn groupoid_suite() -> Outcome {
    let s3 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
    s3.validate().map_err(|e| e.to_string())?;
    let n = nerve(&s3, 3);
    for level in 0..2 {
        for p in 0..n.size(level) {
            let mut c = Cochain::zero(&n, level);
            c.values[p] = Rational::one();
            ensure(coboundary(&n, &coboundary(&n, &c)).is_zero(), "∂² ≠ 0")?;
        }
    }

    let z4 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(4));
    let b = BundleCocycle::new(z4.clone(), FiniteGroup::cyclic(2), vec![0, 1, 0, 1]).map_err(|e| e.to_string())?;
    let t = transformation_groupoid(&b).map_err(|e| e.to_string())?;
    t.check_equivariance(&b.group).map_err(|e| e.to_string())?;
    t.projection.check(&t.groupoid, &b.base).map_err(|e| e.to_string())?;

    let z8 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(8));
    let red = StrictHom { on_objects: vec![0], on_arrows: (0..8).map(|k| k % 4).collect() };
    let triple = StrictHom { on_objects: vec![0], on_arrows: (0..4).map(|k| (3 * k) % 4).collect() };
    let phi = GeneralizedHom::from_strict(&z8, &z4, &red).map_err(|e| e.to_string())?;
    let psi = GeneralizedHom::from_strict(&z4, &z4, &triple).map_err(|e| e.to_string())?;
    let lhs = pullback_bundle(&phi.compose(&psi).map_err(|e| e.to_string())?, &b).map_err(|e| e.to_string())?;
    let rhs = pullback_bundle(&phi, &pullback_bundle(&psi, &b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(lhs.isomorphism_to(&rhs).is_some(), "pullback composition law")?;

    let (g, tau, sigma) = pullback_groupoid(&psi).map_err(|e| e.to_string())?;
    tau.check(&g, &psi.source).map_err(|e| e.to_string())?;
    sigma.check(&g, &psi.target).map_err(|e| e.to_string())?;

    let rep = holonomy_rep(&b, 0).map_err(|e| e.to_string())?;
    ensure(rep == vec![(0, 0), (1, 1), (2, 0), (3, 1)], "mod-2 holonomy table")?;

    let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
    let n2 = nerve(&z2, 4);
    let c = GroupoidComplex { nerve: &n2 };
    let mut dims = Vec::new();
    for k in 0..=3 {
        dims.push(weilkit::cohomology::cohomology_window(&c, k).map_err(|e| e.to_string())?.dimension);
    }
    ensure(dims == vec![1, 0, 0, 0], format!("H^*(ℤ/2) dimensions {dims:?}"))?;
    for gpd in [&s3, &z4, &z8, &t.groupoid, &g] {
        ensure(gpd.n_arrows() <= 64, "fixture too large")?;
    }
    Ok("axioms, ∂² = 0, transformation groupoid, pullback law, τ/σ strictness, holonomy; H^{1..3}(ℤ/2; ℚ) = 0".into())
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.display().to_string()
}

fn cli_contract() -> Outcome {
    let jobs: Vec<(Vec<String>, i32)> = vec![
        (vec!["validate".into(), fixture("so3_weil.json"), "--degree-bound".into(), "8".into()], 0),
        (vec!["validate".into(), fixture("malformed.json")], 2),
        (vec!["validate".into(), fixture("bad_jacobi.json")], 1),
        (
            ["validate", "z2_groupoid.json", "s3_groupoid.json", "z4_mod2_bundle.json", "bott_tu_abelian.json", "so3_killing.json"]
                .iter()
                .enumerate()
                .map(|(i, s)| if i == 0 { s.to_string() } else { fixture(s) })
                .collect(),
            0,
        ),
        (vec!["chern-weil".into(), fixture("u1_eta.json"), fixture("u1_xi.json"), "--construction".into(), "both".into()], 0),
        (vec!["chern-weil".into(), fixture("u1_eta.json"), fixture("u1_one.json")], 0),
        (vec!["chern-weil".into(), fixture("so3_constant.json"), fixture("so3_killing.json"), "--expect-level0".into()], 0),
        (vec!["chern-weil".into(), fixture("so3_eta.json"), fixture("so3_killing.json"), "--expect-level0".into()], 1),
        (vec!["chern-weil".into(), fixture("so3_eta.json"), fixture("so3_not_invariant.json")], 1),
        (vec!["chern-weil".into(), fixture("so3_eta.json"), fixture("so3_killing.json"), "--format".into(), "latex".into()], 0),
        (vec!["bianchi".into(), fixture("sl2_eta.json")], 0),
        (
            vec![
                "functoriality".into(),
                fixture("so3_eta.json"),
                fixture("so3_killing.json"),
                "--automorphism".into(),
                fixture("so3_swap.json"),
            ],
            0,
        ),
        (vec!["functoriality".into(), fixture("so3_pair_mid.json"), fixture("so3_killing.json")], 0),
        (vec!["independence".into(), fixture("u1_pair_a.json"), fixture("u1_pair_b.json"), fixture("u1_xi.json")], 0),
        (
            vec![
                "independence".into(),
                fixture("u1_pair_a.json"),
                fixture("u1_pair_b.json"),
                fixture("u1_xi.json"),
                "--level-bound".into(),
                "1".into(),
            ],
            1,
        ),
        (vec!["bott-tu".into(), fixture("bott_tu_heisenberg.json"), fixture("u1_xi.json")], 0),
        (vec!["holonomy".into(), fixture("z4_mod2_bundle.json"), "--object".into(), "*".into()], 0),
        (vec!["holonomy".into(), fixture("z4_trivial_bundle.json"), "--object".into(), "*".into()], 0),
        (vec!["holonomy".into(), fixture("disconnected_bundle.json"), "--object".into(), "x7".into()], 1),
        (vec!["cohomology".into(), fixture("z2_groupoid.json")], 0),
        (vec!["cohomology".into(), fixture("u1_eta.json")], 0),
    ];
    let bin = env!("CARGO_BIN_EXE_weilkit");
    for (args, want) in &jobs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let out = Command::new(bin).args(args).args(["--seed", "17"]).output().map_err(|e| e.to_string())?;
            let code = out.status.code().unwrap_or(-1);
            ensure(code == *want, format!("{} exited {code}, expected {want}", args.join(" ")))?;
            outputs.push(out.stdout);
        }
        ensure(outputs[0] == outputs[1], format!("{} is not deterministic", args[0]))?;
    }
    Ok(format!("{} jobs, byte-identical across two runs, exit codes as contracted", jobs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("Weil-algebra axioms", weil_axioms),
        ("cosimplicial and nerve identities", cosimplicial_identities),
        ("double-complex laws", double_complex_laws),
        ("integration chain map", integration_chain_map),
        ("construction coincidence", construction_coincidence),
        ("Bianchi identity", bianchi),
        ("connection case", connection_case),
        ("functoriality", functoriality),
        ("connection independence", independence),
        ("Bott-Tu layer", bott_tu),
        ("finite-groupoid suite", groupoid_suite),
        ("CLI contract", cli_contract),
    ];
    let mut failed = Vec::new();
    for (i, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {label}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {label}: {why} [{secs:.2}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
