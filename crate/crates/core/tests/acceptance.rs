//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Built without the libtest harness so the lines always print.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_points::ellcurve::{ec_add, ec_neg, CurvePoint, CurveSpec, TorsionTable};
use quartic_points::exact::rat;
use quartic_points::finitefield::ec_count_points;
use quartic_points::golden::{check_grid, check_s0, check_torsion, golden_count, orbit_union, Check};
use quartic_points::mordell::{compute, q_beta, verify_bielliptic, FermatPoint, Gamma2Report};
use quartic_points::numberfield::{
    nf_is_square, nf_roots, preset, FieldElement, KPoly, NumberField, SquareResult, PRESET_LABELS,
};

const PRESET_COUNTS: [(&str, usize); 5] = [("Q", 16), ("Qi", 44), ("Qsqrt2", 28), ("Qzeta8", 188), ("Qalpha", 44)];
const FIVE_FIELD_BUDGET: Duration = Duration::from_secs(10 * 60);
const ODD_DEGREE_BUDGET: Duration = Duration::from_secs(5 * 60);
const ZETA16_BUDGET: Duration = Duration::from_secs(60 * 60);
const ROUND_TRIPS: usize = 1000;

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, note: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(note.into());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.require(c.passed, c.to_string());
        }
    }
}

fn report_line(n: usize, name: &str, o: &Outcome) -> bool {
    let tag = if o.passed { "PASS" } else { "FAIL" };
    println!("criterion {n} [{tag}] {name}: {}", o.notes.join("; "));
    o.passed
}

fn run<F: FnOnce(&mut Outcome) -> quartic_points::Result<()>>(f: F) -> Outcome {
    let mut o = Outcome::new();
    if let Err(e) = f(&mut o) {
        o.require(false, format!("error: {e}"));
    }
    o
}

fn expanded_set(r: &Gamma2Report) -> HashSet<FermatPoint> {
    r.expanded.iter().map(|(p, _)| p.clone()).collect()
}

/// The points of `from` moved into `to.field` along `t -> gen_image`,
/// written in the presentations of `to`'s registry.
fn moved(from: &[FermatPoint], to: &Gamma2Report, gen_image: &FieldElement) -> quartic_points::Result<HashSet<FermatPoint>> {
    let mut registry = to.registry.clone();
    let mut out = HashSet::new();
    for p in from {
        out.insert(registry.canonical(&p.base_change(gen_image)?)?);
    }
    Ok(out)
}

fn s0_union(r: &Gamma2Report, reps: &[FermatPoint]) -> quartic_points::Result<HashSet<FermatPoint>> {
    orbit_union(&mut r.registry.clone(), reps)
}

fn s0_points(r: &Gamma2Report) -> Vec<FermatPoint> {
    r.s0.iter().map(|x| x.point.clone()).collect()
}

fn criterion_1(reports: &[Gamma2Report], elapsed: Duration) -> Outcome {
    let mut o = Outcome::new();
    for (r, (label, want)) in reports.iter().zip(PRESET_COUNTS) {
        o.require(golden_count(label) == Some(want), format!("{label}: reference table disagrees"));
        o.require(r.gamma2_count == want, format!("{label}: {} != {want}", r.gamma2_count));
    }
    let counts: Vec<String> = reports.iter().map(|r| r.gamma2_count.to_string()).collect();
    o.note(format!("counts {} in {:.1}s", counts.join(", "), elapsed.as_secs_f64()));
    o.require(elapsed <= FIVE_FIELD_BUDGET, "five-field run over 10 minutes");
    o
}

fn criterion_2(reports: &[Gamma2Report]) -> Outcome {
    run(|o| {
        for r in reports {
            o.checks([check_s0(r)?]);
        }
        let orbits: Vec<String> = reports.iter().map(|r| r.s0.len().to_string()).collect();
        o.note(format!("orbits {}", orbits.join(", ")));
        Ok(())
    })
}

fn criterion_3(reports: &[Gamma2Report]) -> Outcome {
    run(|o| {
        for r in reports {
            let c = check_grid(r)?;
            o.note(format!("{} {}", r.field.label().unwrap_or("?"), r.grid.nonempty().len()));
            o.checks([c]);
        }
        Ok(())
    })
}

fn criterion_4(reports: &[Gamma2Report]) -> Outcome {
    run(|o| {
        for r in reports {
            o.checks([check_torsion(&r.torsion.0)?, check_torsion(&r.torsion.1)?]);
            o.note(format!(
                "{} {} / {}",
                r.field.label().unwrap_or("?"),
                r.torsion.0.structure_name(),
                r.torsion.1.structure_name()
            ));
        }
        Ok(())
    })
}

fn criterion_5(over_q: &Gamma2Report) -> Outcome {
    run(|o| {
        let q_points: Vec<FermatPoint> = over_q.expanded.iter().map(|(p, _)| p.clone()).collect();
        for label in ["cubic-2", "quintic-3"] {
            let k = preset(label)?;
            let start = Instant::now();
            let r = compute(&k)?;
            let elapsed = start.elapsed();
            let want = moved(&q_points, &r, &FieldElement::zero(&k))?;
            o.require(expanded_set(&r) == want, format!("{label}: nontrivial points differ from Q"));
            o.require(r.identified_l == "Q", format!("{label}: identified L {}", r.identified_l));
            o.require(r.s0.len() == 1, format!("{label}: {} S0 orbits", r.s0.len()));
            o.require(elapsed <= ODD_DEGREE_BUDGET, format!("{label}: over 5 minutes"));
            o.note(format!("{label} {} nontrivial, L={} ({:.1}s)", r.expanded.len(), r.identified_l, elapsed.as_secs_f64()));
        }
        Ok(())
    })
}

fn criterion_6(over_q: &Gamma2Report, zeta8: &Gamma2Report) -> Outcome {
    run(|o| {
        let k = preset("Qsqrt33")?;
        let r = compute(&k)?;
        let want = s0_union(&r, &moved(&s0_points(over_q), &r, &FieldElement::zero(&k))?.into_iter().collect::<Vec<_>>())?;
        let got = s0_union(&r, &s0_points(&r))?;
        o.require(r.gamma2_count == 16, format!("Qsqrt33 count {}", r.gamma2_count));
        o.require(got == want && r.s0.len() == 1, "Qsqrt33: S0 differs from the Q orbit");
        o.note(format!("Qsqrt33 count {}, {} S0 orbit", r.gamma2_count, r.s0.len()));

        let k16 = preset("Qzeta16")?;
        let start = Instant::now();
        let r16 = compute(&k16)?;
        let elapsed = start.elapsed();
        let z = FieldElement::generator(&k16);
        let gen_image = &z * &z;
        let want = s0_union(&r16, &moved(&s0_points(zeta8), &r16, &gen_image)?.into_iter().collect::<Vec<_>>())?;
        let got = s0_union(&r16, &s0_points(&r16))?;
        o.require(got == want && r16.s0.len() == zeta8.s0.len(), "Qzeta16: S0 differs from Qzeta8");
        let all8: Vec<FermatPoint> = zeta8.expanded.iter().map(|(p, _)| p.clone()).collect();
        o.require(expanded_set(&r16) == moved(&all8, &r16, &gen_image)?, "Qzeta16: nontrivial points differ");
        o.require(r16.identified_l == "Qzeta8", format!("Qzeta16: identified L {}", r16.identified_l));
        o.require(
            r16.torsion.0.order() == zeta8.torsion.0.order() && r16.torsion.1.order() == zeta8.torsion.1.order(),
            "Qzeta16: torsion grows",
        );
        o.require(elapsed <= ZETA16_BUDGET, "Qzeta16 over 60 minutes");
        o.note(format!(
            "Qzeta16 full scope: count {}, {} S0 orbits, L={} ({:.1}s)",
            r16.gamma2_count,
            r16.s0.len(),
            r16.identified_l,
            elapsed.as_secs_f64()
        ));
        Ok(())
    })
}

fn group_axioms(t: &TorsionTable) -> Option<String> {
    let curve = &t.curve;
    let set: BTreeSet<&CurvePoint> = t.points.iter().collect();
    for p in &t.points {
        if ec_add(curve, p, &CurvePoint::Infinity) != *p {
            return Some(format!("{p} + O"));
        }
        if !ec_add(curve, p, &ec_neg(p)).is_infinity() {
            return Some(format!("{p} + (-{p})"));
        }
        for q in &t.points {
            let pq = ec_add(curve, p, q);
            if pq != ec_add(curve, q, p) || !set.contains(&pq) {
                return Some(format!("{p} + {q}"));
            }
            for r in &t.points {
                if ec_add(curve, &pq, r) != ec_add(curve, p, &ec_add(curve, q, r)) {
                    return Some(format!("({p} + {q}) + {r}"));
                }
            }
        }
    }
    None
}

/// `(N - q - 1)^2 <= 4q` for every count in the torsion bound certificate,
/// each recomputed from the residue field.
fn hasse_window(curve: &CurveSpec, t: &TorsionTable) -> quartic_points::Result<usize> {
    let mut checked = 0;
    for (p, fields) in curve.field.residue_fields() {
        for rf in fields {
            let Some(q) = rf.q_u64().filter(|&q| q <= 200_000) else { continue };
            let n = ec_count_points(&curve.a, rf)?;
            let d = n as i128 - q as i128 - 1;
            if d * d > 4 * q as i128 {
                return Err(quartic_points::Error::Internal(format!("p={p}: #E(F_{q}) = {n}")));
            }
            if n % t.order() != 0 {
                return Err(quartic_points::Error::Internal(format!("p={p}: {} does not divide {n}", t.order())));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn random_element<R: Rng>(k: &Arc<NumberField>, rng: &mut R) -> FieldElement {
    loop {
        let c: Vec<i64> = (0..k.degree()).map(|_| rng.gen_range(-6..=6)).collect();
        let e = FieldElement::from_ints(k, &c);
        if !e.is_zero() {
            return e;
        }
    }
}

fn round_trip<R: Rng>(k: &Arc<NumberField>, rng: &mut R) -> quartic_points::Result<Option<String>> {
    let a = random_element(k, rng);
    let a2 = a.square();
    match nf_is_square(&a2)? {
        SquareResult::Square(r) if r.square() == a2 && (r == a || r == -&a) => {}
        other => return Ok(Some(format!("{a}^2 gave {other:?}"))),
    }
    let b = random_element(k, rng);
    let one = FieldElement::one(k);
    let f = &KPoly::new(k, vec![-&a, one.clone()]) * &KPoly::new(k, vec![-&b, one.clone()]);
    let got: BTreeSet<FieldElement> = nf_roots(&f)?.into_iter().collect();
    if got != BTreeSet::from([a.clone(), b.clone()]) {
        return Ok(Some(format!("roots of (X - {a})(X - {b}) gave {got:?}")));
    }
    let d = random_element(k, rng);
    let roots = nf_roots(&KPoly::new(k, vec![-&d, FieldElement::zero(k), one]))?;
    match nf_is_square(&d)? {
        SquareResult::Square(r) if r.square() == d && roots.len() == 2 => {}
        SquareResult::NonSquare(_) if roots.is_empty() => {}
        other => return Ok(Some(format!("{d}: {other:?} with {} roots", roots.len()))),
    }
    Ok(None)
}

fn criterion_7(reports: &[Gamma2Report]) -> Outcome {
    run(|o| {
        let mut emitted = 0;
        let mut nontrivial = 0;
        let mut residue_counts = 0;
        for r in reports {
            let label = r.field.label().unwrap_or("?");
            let mut points: Vec<&FermatPoint> = r.expanded.iter().map(|(p, _)| p).collect();
            points.extend(r.records.iter().map(|x| &x.point));
            points.extend(r.s0.iter().map(|x| &x.point));
            points.extend(r.step1.iter().map(|(_, p)| p));
            for p in points {
                emitted += 1;
                o.require(p.on_curve(), format!("{label}: {p} not on the quartic"));
                if !p.is_trivial() {
                    nontrivial += 1;
                    o.require(verify_bielliptic(p)?, format!("{label}: {p} fails the bielliptic check"));
                }
            }
            for t in [&r.torsion.0, &r.torsion.1] {
                if let Some(bad) = group_axioms(t) {
                    o.require(false, format!("{label} {}: group law fails at {bad}", t.curve.name()));
                }
                residue_counts += hasse_window(&t.curve, t)?;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let fields: Vec<Arc<NumberField>> =
            ["Q", "Qi", "Qsqrt2", "Qzeta8", "Qalpha", "cubic-1", "quartic-2"].iter().map(|l| preset(l)).collect::<Result<_, _>>()?;
        for i in 0..ROUND_TRIPS {
            let k = &fields[i % fields.len()];
            if let Some(bad) = round_trip(k, &mut rng)? {
                o.require(false, format!("{}: {bad}", k.label().unwrap_or("?")));
            }
        }
        o.note(format!(
            "{emitted} emitted points on the quartic, {nontrivial} bielliptic checks, group law on all torsion triples, \
             {residue_counts} residue counts in the Hasse window, {ROUND_TRIPS} square/root round trips"
        ));
        Ok(())
    })
}

/// Points of `y^2 = x^3 + a x` over `F_p` by listing every pair.
fn enumerate_points(a: i64, p: i64) -> usize {
    let mut n = 1;
    for x in 0..p {
        for y in 0..p {
            if (y * y - x * x * x - a * x).rem_euclid(p) == 0 {
                n += 1;
            }
        }
    }
    n
}

/// Division of `T^3 + aT - (y - beta x + beta T)^2` by `T - x` with `beta`
/// kept symbolic: coefficients are polynomials in `beta` over `K`.
fn symbolic_quotient(x: &FieldElement, y: &FieldElement, a: i64) -> (Vec<KPoly>, KPoly) {
    let k = x.field();
    let c = |v: Vec<FieldElement>| KPoly::new(k, v);
    let zero = FieldElement::zero(k);
    let one = FieldElement::one(k);
    // y - beta x + beta T = alpha + beta T, alpha = y - x beta
    let alpha = c(vec![y.clone(), -x]);
    let beta = c(vec![zero.clone(), one.clone()]);
    let sq = [&alpha * &alpha, &(&alpha * &beta) + &(&alpha * &beta), &beta * &beta];
    let cubic = [c(vec![]), c(vec![FieldElement::from_int(k, a)]), c(vec![]), c(vec![one])];
    let f: Vec<KPoly> = (0..4).map(|i| if i < 3 { &cubic[i] - &sq[i] } else { cubic[i].clone() }).collect();
    // synthetic division by T - x
    let xc = c(vec![x.clone()]);
    let mut quotient = vec![c(vec![]); 3];
    let mut carry = c(vec![]);
    for i in (0..4).rev() {
        let v = &f[i] + &(&carry * &xc);
        if i == 0 {
            return (quotient, v);
        }
        quotient[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

fn criterion_8(reports: &[Gamma2Report]) -> Outcome {
    run(|o| {
        let (n1, n2) = (enumerate_points(4, 5), enumerate_points(-4, 5));
        o.require(n1 == 8 && n2 == 4, format!("enumeration over F_5 gave {n1}, {n2}"));
        let q = NumberField::rationals();
        let f5 = &q.residue_fields().iter().find(|(p, _)| *p == 5).expect("5 is a good prime").1[0];
        let lib = (ec_count_points(&rat(4), f5)?, ec_count_points(&rat(-4), f5)?);
        o.require(lib == (8, 4), format!("library counts over F_5 {lib:?}"));
        o.note(format!("#E1(F_5) = {n1}, #E2(F_5) = {n2}"));

        let mut divisions = 0;
        for r in reports {
            let k = &r.field;
            for (t, a) in [(&r.torsion.0, 4), (&r.torsion.1, -4)] {
                for (x, y) in t.affine() {
                    let (quot, rem) = symbolic_quotient(x, y, a);
                    o.require(rem.is_zero(), format!("remainder {rem:?} at ({x}, {y})"));
                    // expected T^2 + (x - beta^2) T + (x^2 + x beta^2 - 2 y beta + a)
                    let zero = FieldElement::zero(k);
                    let b_want = KPoly::new(k, vec![x.clone(), zero.clone(), FieldElement::from_int(k, -1)]);
                    let c_want = KPoly::new(
                        k,
                        vec![&x.square() + &FieldElement::from_int(k, a), y.scale(&rat(-2)), x.clone()],
                    );
                    o.require(
                        quot[2] == KPoly::new(k, vec![FieldElement::one(k)]) && quot[1] == b_want && quot[0] == c_want,
                        format!("quotient at ({x}, {y})"),
                    );
                    for beta in [FieldElement::from_int(k, 3), FieldElement::generator(k), x + y] {
                        let (b, c) = q_beta(x, y, &beta, a);
                        o.require(
                            b == quot[1].eval(&beta) && c == quot[0].eval(&beta),
                            format!("q_beta disagrees at ({x}, {y}), beta = {beta}"),
                        );
                    }
                    divisions += 1;
                }
            }
        }
        o.note(format!("{divisions} symbolic divisions by T - x agree with the closed form"));
        Ok(())
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let reports: Vec<Gamma2Report> = match PRESET_LABELS.iter().map(|l| preset(l).and_then(|k| compute(&k))).collect() {
        Ok(r) => r,
        Err(e) => {
            println!("criterion 1 [FAIL] cardinalities: {e}");
            return ExitCode::FAILURE;
        }
    };
    let elapsed = start.elapsed();
    let (over_q, zeta8) = (&reports[0], &reports[3]);

    let results = [
        report_line(1, "cardinalities", &criterion_1(&reports, elapsed)),
        report_line(2, "S0 reference sets", &criterion_2(&reports)),
        report_line(3, "Step II tables", &criterion_3(&reports)),
        report_line(4, "torsion tables", &criterion_4(&reports)),
        report_line(5, "odd-degree fields", &criterion_5(over_q)),
        report_line(6, "quadratic and cyclotomic spot checks", &criterion_6(over_q, zeta8)),
        report_line(7, "property suites", &criterion_7(&reports)),
        report_line(8, "desk-scale oracles", &criterion_8(&reports)),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
