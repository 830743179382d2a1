//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact (tolerance 0). Criteria 1 to 3 also carry a
//! wall-clock limit. The process exits non-zero when a check fails that is
//! not listed as a known defect of the stated relation (see `Check::known`).

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::systems::rand_tri_system;
use common::{rand_pair, rand_rational, rand_root_set, valid_orders};
use subres_core::confluent::{
    confluent_inverse, vandermonde_confluent, vandermonde_det_closed, vprime, wronskian, wronskian_det_closed,
};
use subres_core::mv::monomials::{monomials_of_degree, reduced_box};
use subres_core::mv::mpoly::total_degree;
use subres_core::mv::{
    assemble_dual_basis, build_monomial_sets, default_order_bound, delta_s, dual_eval, extraneous_factor,
    inverse_system, macaulay_matrix, poisson_parts, DualFunctional, MVSystem, MonomialSet, MultiPoly, Point,
};
use subres_core::roots_formulas::{sres_dm1_hermite, sres_one, sres_roots, Variant};
use subres_core::{
    poly_from_roots, sres_coeff, sylv_double_sum, Error, ExactMatrix, MultiRootSet, Scalar, UniPoly,
};

const SEED: u64 = 0x5eed_2024;
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(10);
const LIMIT_3: Duration = Duration::from_secs(120);

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

impl From<String> for Fail {
    fn from(s: String) -> Self {
        Fail(s)
    }
}

type R<T> = Result<T, Fail>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> R<()> {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg()))
    }
}

struct Check {
    label: String,
    outcome: Result<String, String>,
    elapsed: Duration,
    limit: Option<Duration>,
    /// Set when the failure is the stated relation itself being wrong.
    known: bool,
}

impl Check {
    fn passed(&self) -> bool {
        self.outcome.is_ok() && self.limit.is_none_or(|l| self.elapsed <= l)
    }

    fn print(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let timing = match self.limit {
            Some(l) => format!("{:.2?}, limit {:.0?}", self.elapsed, l),
            None => format!("{:.2?}", self.elapsed),
        };
        let detail = match &self.outcome {
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!("{}: {status} ({timing}) {detail}", self.label);
    }
}

fn run(label: &str, limit: Option<Duration>, f: impl FnOnce() -> R<String>) -> Check {
    let start = Instant::now();
    let outcome = f().map_err(|Fail(e)| e);
    Check {
        label: label.to_string(),
        outcome,
        elapsed: start.elapsed(),
        limit,
        known: false,
    }
}

fn same_up_to_sign(a: &Scalar, b: &Scalar) -> bool {
    a == b || *a == -b.clone()
}

fn circle_system(c: [&str; 3]) -> R<MVSystem> {
    let v = ["x1", "x2"];
    let f3 = format!("{}+({})*x1+({})*x2", c[0], c[1], c[2]);
    Ok(MVSystem::new(
        vec![
            MultiPoly::parse("x1*x2", &v)?,
            MultiPoly::parse("x1^2+(x2-1)^2-1", &v)?,
            MultiPoly::parse(&f3, &v)?,
        ],
        vec![2, 2, 1],
    )?)
}

fn criterion_1() -> R<String> {
    let sys = circle_system(["c0", "c1", "c2"])?;
    let s = MonomialSet::new(2, vec![vec![2, 0]])?;
    let expected = Scalar::parse("c0^3+2*c0^2*c2")?;
    let delta = delta_s(&sys, 2, &s)?;
    ensure(same_up_to_sign(&delta, &expected), || format!("delta_s = {delta}"))?;
    let e = extraneous_factor(&sys, 2)?;
    ensure(e == Scalar::one(), || format!("E(2) = {e}"))?;

    let o = Point::from_ints(&[0, 0]);
    let q = Point::from_ints(&[0, 2]);
    let at_o = |terms: &[(&[u32], i64)]| {
        DualFunctional::new(o.clone(), terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_int(*c))))
    };
    let basis = assemble_dual_basis(
        vec![
            (
                o.clone(),
                vec![
                    DualFunctional::evaluation(o.clone()),
                    at_o(&[(&[1, 0], 1)])?,
                    at_o(&[(&[0, 1], 1), (&[2, 0], 2)])?,
                ],
            ),
            (q.clone(), vec![DualFunctional::evaluation(q)]),
        ],
        4,
    )?;
    let sets = build_monomial_sets(&[2, 2, 1], 2, &BTreeMap::new())?;
    let parts = poisson_parts(&sys, 2, &s, &basis, &sets)?;
    let four = Scalar::from_int(4);
    ensure(same_up_to_sign(&parts.det_vt, &four), || format!("det V_T = {}", parts.det_vt))?;
    ensure(same_up_to_sign(&parts.det_o, &(&four * &expected)), || format!("det O_S = {}", parts.det_o))?;
    ensure(parts.prefactor == Scalar::one(), || format!("prefactor = {}", parts.prefactor))?;
    ensure(parts.value == delta, || format!("poisson {} != macaulay {delta}", parts.value))?;
    Ok(format!(
        "delta_s = {delta}, E(2) = 1, poisson = ({})({})/({})",
        parts.prefactor, parts.det_o, parts.det_vt
    ))
}

fn criterion_2() -> R<String> {
    let v = ["x1", "x2"];
    let gens = vec![
        MultiPoly::parse("2*x1*x2^2+5*x1^4", &v)?,
        MultiPoly::parse("2*x1^2*x2+5*x2^4", &v)?,
    ];
    let origin = Point::from_ints(&[0, 0]);
    let inv = inverse_system(&gens, &origin, default_order_bound(&gens))?;
    ensure(inv.stabilized, || format!("not stabilized by order {}", inv.order))?;
    ensure(inv.dim() == 11, || format!("dimension {}", inv.dim()))?;
    for (k, l) in inv.functionals.iter().enumerate() {
        for g in &gens {
            let v = dual_eval(l, g)?;
            ensure(v.is_zero(), || format!("functional {k} gives {v} on {g}"))?;
        }
    }
    Ok(format!("dimension 11 at order {}, all functionals annihilate f1, f2", inv.order))
}

/// The shared random suite of criteria 3 and 4.
fn random_suite() -> Vec<(MultiRootSet, MultiRootSet)> {
    let mut rng = StdRng::seed_from_u64(SEED);
    (0..120).map(|_| rand_pair(&mut rng, 6, 3, 0.2)).collect()
}

fn criterion_3() -> R<String> {
    let mut comparisons = 0;
    let suite = random_suite();
    for (a, b) in &suite {
        let (f, g) = (poly_from_roots(a), poly_from_roots(b));
        for t in valid_orders(a.d(), b.d()) {
            let reference = sres_coeff(&f, &g, t)?;
            for v in Variant::ALL {
                let r = sres_roots(a, b, t, v)?;
                ensure(r == reference, || format!("{v} differs at A = {a:?}, B = {b:?}, t = {t}"))?;
                comparisons += 1;
            }
        }
    }
    Ok(format!("{} pairs, {comparisons} exact comparisons", suite.len()))
}

fn taylor_oracle(g: &UniPoly, alpha: &Scalar, d: usize) -> UniPoly {
    let x_minus_a = UniPoly::new(vec![-alpha.clone(), Scalar::one()]);
    let mut deriv = g.clone();
    let mut factorial = Scalar::one();
    let mut acc = UniPoly::zero();
    for j in 0..d {
        if j > 0 {
            deriv = deriv.derivative();
            factorial = &factorial * &Scalar::from_int(j as i64);
        }
        let c = deriv.eval(alpha).exact_div(&factorial).expect("nonzero factorial");
        acc = &acc + &x_minus_a.pow(j as u32).scale(&c);
    }
    acc
}

/// `ḡ(α)^{d-1}` times the two composition sums over `B = ((β_1,e_1),(β_2,e_2))`.
fn dks_oracle(alpha: &Scalar, d: usize, b: &[(Scalar, usize)]) -> R<UniPoly> {
    let g_alpha: Scalar = b.iter().map(|(beta, e)| (alpha - beta).pow(*e as u32)).product();
    let lead = g_alpha.pow(d as u32 - 1);
    let sum = |total: usize| -> R<Scalar> {
        let mut acc = Scalar::zero();
        for k1 in 0..=total {
            let ks = [k1, total - k1];
            let mut num = lead.clone();
            let mut den = Scalar::one();
            for ((beta, e), k) in b.iter().zip(ks) {
                num = &num * &Scalar::binomial((e - 1 + k) as u64, k as u64);
                den = &den * &(alpha - beta).pow(k as u32);
            }
            acc = &acc + &num.exact_div(&den)?;
        }
        Ok(acc)
    };
    let x_minus_a = UniPoly::new(vec![-alpha.clone(), Scalar::one()]);
    let high = x_minus_a.scale(&sum(d - 1)?);
    let low = if d >= 2 { UniPoly::constant(sum(d - 2)?) } else { UniPoly::zero() };
    Ok(&high + &low)
}

fn criterion_4() -> R<String> {
    let mut hermite = 0;
    let mut one = 0;
    for (a, b) in random_suite() {
        let (d, e) = (a.d(), b.d());
        let (f, g) = (poly_from_roots(&a), poly_from_roots(&b));
        let h = sres_dm1_hermite(&a, &b)?;
        ensure(h == sres_coeff(&f, &g, d - 1)?, || format!("hermite differs at A = {a:?}, B = {b:?}"))?;
        hermite += 1;
        if 1 < d && d <= e && !a.shares_root_with(&b) {
            let s1 = sres_one(&a, &b)?;
            ensure(s1 == sres_coeff(&f, &g, 1)?, || format!("sres_one differs at A = {a:?}, B = {b:?}"))?;
            one += 1;
        }
    }

    let alpha = Scalar::param("alpha");
    let b_entries = vec![(Scalar::param("beta1"), 2), (Scalar::param("beta2"), 2)];
    let b = MultiRootSet::new(b_entries.clone())?;
    let g = poly_from_roots(&b);
    for d in 1..=4 {
        let a = MultiRootSet::new(vec![(alpha.clone(), d)])?;
        let f = poly_from_roots(&a);
        let taylor = taylor_oracle(&g, &alpha, d);
        ensure(sres_dm1_hermite(&a, &b)? == taylor, || format!("Taylor form differs for d = {d}"))?;
        ensure(sres_coeff(&f, &g, d - 1)? == taylor, || format!("Sres_(d-1) is not the Taylor form, d = {d}"))?;
        if d >= 2 {
            let dks = dks_oracle(&alpha, d, &b_entries)?;
            ensure(sres_one(&a, &b)? == dks, || format!("single-root Sres_1 form differs for d = {d}"))?;
            ensure(sres_coeff(&f, &g, 1)? == dks, || format!("Sres_1 is not the single-root form, d = {d}"))?;
        }
    }
    Ok(format!(
        "{hermite} Hermite and {one} Sres_1 comparisons; symbolic single-root forms for d = 1..4"
    ))
}

fn criterion_5() -> R<String> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 5);
    let mut comparisons = 0;
    for _ in 0..40 {
        let (a, b) = rand_pair(&mut rng, 5, 1, 0.2);
        let (d, e) = (a.d(), b.d());
        let (f, g) = (poly_from_roots(&a), poly_from_roots(&b));
        for t in valid_orders(d, e) {
            let s = sres_coeff(&f, &g, t)?;
            for p in 0..=t.min(d) {
                let q = t - p;
                if q > e {
                    continue;
                }
                let sign = if (p * (d - t)) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
                let expected = s.scale(&(&sign * &Scalar::binomial(t as u64, p as u64)));
                let ds = sylv_double_sum(&a, &b, p, q)?;
                ensure(ds == expected, || format!("p = {p}, q = {q} differs at A = {a:?}, B = {b:?}"))?;
                comparisons += 1;
            }
        }
    }
    Ok(format!("40 pairs, {comparisons} (p, q) comparisons"))
}

fn criterion_6() -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 6);
    let sets: Vec<MultiRootSet> = (0..60)
        .map(|_| {
            let d = rng.gen_range(1..=7);
            rand_root_set(&mut rng, d, 3, &[])
        })
        .collect();
    let hs: Vec<UniPoly> = (0..60)
        .map(|_| {
            let deg = rng.gen_range(0..=4);
            UniPoly::new((0..=deg).map(|_| rand_rational(&mut rng)).collect())
        })
        .collect();
    let n = sets.len();

    let gvd = run("criterion 6 [confluent Vandermonde determinant]", None, || {
        for a in &sets {
            let det = vandermonde_confluent(a, a.d()).det()?;
            ensure(det == vandermonde_det_closed(a), || format!("A = {a:?}"))?;
        }
        Ok(format!("{n} sets"))
    });
    let gwd = run("criterion 6 [generalized Wronskian determinant]", None, || {
        for (a, h) in sets.iter().zip(&hs) {
            let det = wronskian(h, a, a.d()).det()?;
            ensure(det == wronskian_det_closed(h, a), || format!("A = {a:?}, h = {h:?}"))?;
        }
        Ok(format!("{n} sets"))
    });
    let mut vp = run("criterion 6 [det V' = (-1)^(m(m-1)/2) (det V)^2]", None, || {
        let mut bad = Vec::new();
        let mut corrected = 0;
        for a in &sets {
            let v = vandermonde_det_closed(a);
            let det = vprime(a).det()?;
            let m = a.m();
            let stated = if (m * (m - 1) / 2) % 2 == 1 { -v.pow(2) } else { v.pow(2) };
            let cross: usize = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .map(|(i, j)| a.multiplicity(i) * a.multiplicity(j))
                .sum();
            let fixed = if cross % 2 == 1 { -v.pow(2) } else { v.pow(2) };
            if det == fixed {
                corrected += 1;
            }
            if det != stated {
                bad.push(a.entries().iter().map(|(_, k)| *k).collect::<Vec<_>>());
            }
        }
        let note = format!(
            "sign (-1)^(sum_(i<j) d_i d_j) holds on {corrected}/{n}, the stated sign fails on {}/{n}",
            bad.len()
        );
        if bad.is_empty() {
            Ok(note)
        } else {
            Err(Fail(format!("{note}; first failing multiplicities {:?}", bad[0])))
        }
    });
    vp.known = true;
    let inv = run("criterion 6 [confluent_inverse * V = I]", None, || {
        for a in &sets {
            let prod = confluent_inverse(a)?.mul(&vandermonde_confluent(a, a.d()))?;
            ensure(prod == ExactMatrix::identity(a.d()), || format!("A = {a:?}"))?;
        }
        Ok(format!("{n} sets"))
    });
    vec![gvd, gwd, vp, inv]
}

fn eps_map(r: &Scalar) -> BTreeMap<String, BigRational> {
    BTreeMap::from([("eps".to_string(), r.as_rational().expect("rational").clone())])
}

fn subst(p: &UniPoly, r: &Scalar) -> R<UniPoly> {
    Ok(p.map_coeffs(|c| c.substitute(&eps_map(r)))?)
}

fn criterion_7() -> R<String> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 7);
    let eps = Scalar::param("eps");
    let mut comparisons = 0;
    for _ in 0..25 {
        let d = rng.gen_range(2..=4);
        let e = rng.gen_range(d..=4);
        let alpha = rand_rational(&mut rng);
        let rest = if d > 2 {
            rand_root_set(&mut rng, d - 2, 2, std::slice::from_ref(&alpha)).entries().to_vec()
        } else {
            Vec::new()
        };
        let b = rand_root_set(&mut rng, e, 2, &[]);
        let g = poly_from_roots(&b);

        let mut split = vec![(alpha.clone(), 1), (&alpha + &eps, 1)];
        split.extend(rest.iter().cloned());
        let mut packed = vec![(alpha.clone(), 2)];
        packed.extend(rest.iter().cloned());
        let a_eps = MultiRootSet::new(split)?;
        let a_0 = MultiRootSet::new(packed)?;
        let f_eps = poly_from_roots(&a_eps);

        // f with ε = r, built from linear factors.
        let f_at = |r: &Scalar| -> UniPoly {
            let mut f = &UniPoly::linear_root(&alpha) * &UniPoly::linear_root(&(&alpha + r));
            for (root, k) in &rest {
                f = &f * &UniPoly::linear_root(root).pow(*k as u32);
            }
            f
        };
        let values = [Scalar::zero(), rand_rational(&mut rng), Scalar::from_ratio(1, 7)];
        for t in valid_orders(d, e) {
            let symbolic = sres_coeff(&f_eps, &g, t)?;
            for r in &values {
                ensure(subst(&symbolic, r)? == sres_coeff(&f_at(r), &g, t)?, || {
                    format!("substitution does not commute at eps = {r}, t = {t}")
                })?;
                comparisons += 1;
            }
            let packed_ref = sres_coeff(&poly_from_roots(&a_0), &g, t)?;
            ensure(subst(&symbolic, &Scalar::zero())? == packed_ref, || format!("eps -> 0 limit at t = {t}"))?;
            for v in Variant::ALL {
                let lim = subst(&sres_roots(&a_eps, &b, t, v)?, &Scalar::zero())?;
                let packed_v = sres_roots(&a_0, &b, t, v)?;
                ensure(lim == packed_v && packed_v == packed_ref, || {
                    format!("{v}: eps -> 0 limit differs from packed formula at t = {t}")
                })?;
                comparisons += 1;
            }
        }
    }
    Ok(format!("25 configurations, {comparisons} comparisons"))
}

/// Override choices for the unforced `T_j`: every `τ_j`-subset of the
/// degree-`j` monomials, for every unforced `j`.
fn t_overrides(degrees: &[u32], t: u32) -> R<Vec<BTreeMap<u32, MonomialSet>>> {
    let n = degrees.len() - 1;
    let defaults = build_monomial_sets(degrees, t, &BTreeMap::new())?;
    let forced_below = (t + 1).saturating_sub(degrees[n]);
    let mut out = vec![BTreeMap::new()];
    for j in forced_below..=defaults.comb.rho {
        let size = defaults.comb.tau[j as usize];
        let mut next = Vec::new();
        for choice in monomials_of_degree(n, j).into_iter().combinations(size) {
            let set = MonomialSet::new(n, choice)?;
            for partial in &out {
                let mut m: BTreeMap<u32, MonomialSet> = partial.clone();
                m.insert(j, set.clone());
                next.push(m);
            }
        }
        out = next;
    }
    Ok(out)
}

fn criterion_8() -> R<String> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 8);
    let mut cases = 0;
    let mut nontrivial_e = 0;
    let mut nonzero_delta = 0;
    let mut overridden = 0;
    let mut signs = BTreeMap::new();
    for k in 0..6 {
        let double = k % 2 == 1;
        let last = if k < 3 { 1 } else { 2 };
        let tri = rand_tri_system(&mut rng, double, last);
        let sys = &tri.sys;
        let gens = &sys.polys()[..3];

        let bound = default_order_bound(gens);
        let mut per_root = Vec::new();
        let mut dim_sum = 0;
        for (pt, mult) in &tri.roots {
            let inv = inverse_system(gens, pt, bound)?;
            ensure(inv.stabilized && inv.dim() == *mult, || {
                format!("inverse system at {pt} has dimension {} (expected {mult})", inv.dim())
            })?;
            for l in &inv.functionals {
                for g in gens {
                    ensure(dual_eval(l, g)?.is_zero(), || format!("functional at {pt} does not annihilate"))?;
                }
            }
            dim_sum += inv.dim();
            per_root.push((pt.clone(), inv.functionals));
        }
        ensure(dim_sum == 8, || format!("dual dimensions sum to {dim_sum}, Bezout number 8"))?;
        let basis = assemble_dual_basis(per_root, 8)?;

        let first = &sys.degrees()[..3];
        for t in 1..(3 + last) {
            let s = MonomialSet::new(
                3,
                reduced_box(first)
                    .into_iter()
                    .filter(|a| total_degree(a) <= t && t - total_degree(a) < last)
                    .collect(),
            )?;
            let m = macaulay_matrix(sys, t, &s)?;
            ensure(m.is_square(), || format!("M_S not square at t = {t}"))?;
            let sets = build_monomial_sets(sys.degrees(), t, &BTreeMap::new())?;
            ensure(sets.t_all.len() == 8, || format!("|T| = {} at t = {t}", sets.t_all.len()))?;
            let parts = match poisson_parts(sys, t, &s, &basis, &sets) {
                Err(Error::Structural(_)) => {
                    // The default T is not a basis of the quotient; use the
                    // first override that is.
                    overridden += 1;
                    let mut found = None;
                    for ov in t_overrides(sys.degrees(), t)? {
                        let candidate = build_monomial_sets(sys.degrees(), t, &ov)?;
                        ensure(candidate.t_all.len() == 8, || format!("|T| = {} at t = {t}", candidate.t_all.len()))?;
                        if let Ok(p) = poisson_parts(sys, t, &s, &basis, &candidate) {
                            found = Some(p);
                            break;
                        }
                    }
                    found.ok_or_else(|| Fail(format!("no choice of T is a basis (system {k}, t = {t})")))?
                }
                other => other?,
            };
            let e = extraneous_factor(sys, t)?;
            let det = m.det()?;
            let rhs = &e * &parts.value;
            let sign = if det == rhs {
                1
            } else if det == -rhs.clone() {
                -1
            } else {
                return Err(Fail(format!("det M_S = {det} but E(t) * poisson = {rhs} (system {k}, t = {t})")));
            };
            *signs.entry(sign).or_insert(0) += 1;
            cases += 1;
            if e != Scalar::one() {
                nontrivial_e += 1;
            }
            if !parts.value.is_zero() {
                nonzero_delta += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (system, t) cases, E(t) != 1 in {nontrivial_e}, delta != 0 in {nonzero_delta}, \
         T overridden in {overridden}, signs {signs:?}"
    ))
}

fn main() -> ExitCode {
    let mut checks = vec![
        run("criterion 1", Some(LIMIT_1), criterion_1),
        run("criterion 2", Some(LIMIT_2), criterion_2),
        run("criterion 3", Some(LIMIT_3), criterion_3),
        run("criterion 4", None, criterion_4),
        run("criterion 5", None, criterion_5),
    ];
    let start6 = Instant::now();
    let subs = criterion_6();
    let failed6: Vec<&str> = subs.iter().filter(|c| !c.passed()).map(|c| c.label.as_str()).collect();
    let summary6 = Check {
        label: "criterion 6".into(),
        outcome: if failed6.is_empty() {
            Ok("all four relations hold".into())
        } else {
            Err(format!("failing: {}", failed6.join(", ")))
        },
        elapsed: start6.elapsed(),
        limit: None,
        known: subs.iter().all(|c| c.passed() || c.known),
    };
    checks.extend(subs);
    checks.push(summary6);
    checks.push(run("criterion 7", None, criterion_7));
    checks.push(run("criterion 8", None, criterion_8));

    for c in &checks {
        c.print();
    }
    let unexpected: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed() && !c.known)
        .map(|c| c.label.as_str())
        .collect();
    let known: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed() && c.known)
        .map(|c| c.label.as_str())
        .collect();
    if !known.is_empty() {
        println!("known failures (the stated relation is false): {}", known.join("; "));
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join("; "));
        ExitCode::FAILURE
    }
}
