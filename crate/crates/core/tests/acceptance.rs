//! Acceptance run over the default panel: n ∈ {1, 2}, k ≤ 4, base degree
//! ≤ 3, 25 trials, δ ∈ {1, 1/2, −1/3, 7/5}. Prints one line per criterion.

use contactsym::contact::sp_generators;
use contactsym::decomposition::{coeff_b, singular_report};
use contactsym::operators::StructureConstants;
use contactsym::verify::{run_suite, CheckRecord, Report, Status, SuiteConfig};
use contactsym::{int, rat, Rational};

struct Criterion {
    name: &'static str,
    ok: bool,
    note: String,
}

fn records<'a>(r: &'a Report, id: &str) -> Vec<&'a CheckRecord> {
    r.checks.iter().filter(|c| c.id == id).collect()
}

fn param<'a>(c: &'a CheckRecord, key: &str) -> &'a str {
    c.params.get(key).map(String::as_str).unwrap_or("")
}

fn delta_of(c: &CheckRecord) -> Rational {
    contactsym::parse_rational(param(c, "delta")).expect("delta parameter")
}

fn k_of(c: &CheckRecord) -> u32 {
    param(c, "k").parse().expect("k parameter")
}

fn n_of(c: &CheckRecord) -> usize {
    param(c, "n").parse().expect("n parameter")
}

/// All records pass and there are exactly `expected` of them.
fn all_pass(r: &Report, id: &str, expected: usize) -> (bool, String) {
    let rs = records(r, id);
    let passed = rs.iter().filter(|c| c.status == Status::Pass).count();
    (
        passed == expected && rs.len() == expected,
        format!("{id}: {passed}/{expected} pass"),
    )
}

/// Passing exactly on the cells where `regular` holds and skipped elsewhere.
fn pass_where(r: &Report, id: &str, regular: impl Fn(&CheckRecord) -> bool) -> (bool, String) {
    let rs = records(r, id);
    let mut ok = !rs.is_empty();
    let (mut pass, mut skip) = (0, 0);
    for c in &rs {
        match (regular(c), c.status) {
            (true, Status::Pass) => pass += 1,
            (false, Status::Skipped) => skip += 1,
            _ => ok = false,
        }
    }
    (ok, format!("{id}: {pass} pass, {skip} skipped"))
}

fn combine(parts: &[(bool, String)]) -> (bool, String) {
    (
        parts.iter().all(|p| p.0),
        parts.iter().map(|p| p.1.clone()).collect::<Vec<_>>().join("; "),
    )
}

fn criterion(name: &'static str, (ok, note): (bool, String)) -> Criterion {
    Criterion { name, ok, note }
}

/// `b_{k,l}` straight from the product of `−r(j, k−j)`, written out here
/// independently of the library's constants.
fn b_oracle(n: i64, k: i64, l: i64, delta: &Rational) -> Rational {
    let mut prod = int(1);
    for j in 1..=l {
        let r = -(int(j) * (int(2 * (n + 1)) * delta + int(2 * (k - j) + j - 1))) / int(2);
        prod *= -r;
    }
    prod.recip()
}

fn main() {
    let cfg = SuiteConfig::default();
    let report = run_suite(&cfg);
    let nd = cfg.n_values.len() * (cfg.k_max as usize + 1) * cfg.deltas.len();
    let n_count = cfg.n_values.len();
    let sing = |k: u32, n: usize, d: &Rational| singular_report(k, n, d).singular;

    let mut out = Vec::new();

    out.push(criterion("1 sl(2) relations", all_pass(&report, "sl2-relations", nd)));

    out.push(criterion(
        "2 power commutators",
        all_pass(&report, "power-commutators", nd),
    ));

    let (ok, note) = all_pass(&report, "alpha-invariance", n_count);
    let trials_ok = records(&report, "alpha-invariance").iter().all(|c| c.trials == 25);
    out.push(criterion("3 invariance of i(alpha)", (ok && trials_ok, note)));

    let gens_ok = cfg.n_values.iter().all(|&n| {
        let want = if n == 1 { 10 } else { 21 };
        sp_generators(n).unwrap().len() == want
            && records(&report, "x-invariance")
                .iter()
                .filter(|c| n_of(c) == n)
                .all(|c| c.detail.as_deref() == Some(&format!("{want} generators")))
    });
    let (ok, note) = all_pass(&report, "x-invariance", nd);
    out.push(criterion("4 invariance of X under sp", (ok && gens_ok, note)));

    let non = records(&report, "x-non-invariance");
    let witnessed = (1..=cfg.k_max).all(|k| {
        cfg.n_values.iter().all(|&n| {
            non.iter()
                .any(|c| n_of(c) == n && k_of(c) == k && c.status == Status::Pass)
        })
    });
    let (ok, note) = all_pass(&report, "x-non-invariance", n_count * (cfg.k_max as usize + 1));
    out.push(criterion("5 non-invariance witness X(q1^3)", (ok && witnessed, note)));

    let sc = StructureConstants::new(1, int(1));
    let worked = coeff_b(2, 1, &sc).unwrap() == rat(1, 3)
        && coeff_b(2, 2, &sc).unwrap() == rat(1, 15)
        && b_oracle(1, 2, 1, &int(1)) == rat(1, 3)
        && b_oracle(1, 2, 2, &int(1)) == rat(1, 15);
    let mut oracle_ok = true;
    for n in 1..=2usize {
        for d in &cfg.deltas {
            for k in 1..=4u32 {
                if sing(k, n, d) {
                    continue;
                }
                let sc = StructureConstants::new(n, d.clone());
                for l in 1..=k {
                    oracle_ok &= coeff_b(k, l, &sc).unwrap() == b_oracle(n as i64, k as i64, l as i64, d);
                }
            }
        }
    }
    let (ok, note) = combine(&[
        pass_where(&report, "projector-laws", |c| !sing(k_of(c), n_of(c), &delta_of(c))),
        pass_where(&report, "projector-singular-error", |_| true),
        all_pass(&report, "projector-worked-values", 1),
    ]);
    out.push(criterion("6 projector laws", (ok && worked && oracle_ok, note)));

    let (ok, note) = combine(&[
        pass_where(&report, "section-law", |c| !sing(k_of(c), n_of(c), &delta_of(c))),
        pass_where(&report, "section-singular-error", |_| true),
        all_pass(&report, "singular-sets", n_count),
        all_pass(&report, "singular-constructors", n_count),
        all_pass(&report, "surjectivity-at-singular", n_count),
    ]);
    out.push(criterion("7 section law and singular weights", (ok, note)));

    let regular_up_to = |c: &CheckRecord| (1..=k_of(c)).all(|j| !sing(j, n_of(c), &delta_of(c)));
    let (ok, note) = combine(&[
        pass_where(&report, "decomposition-round-trip", regular_up_to),
        pass_where(&report, "decomposition-c-scalar", regular_up_to),
        pass_where(&report, "decomposition-uniqueness", regular_up_to),
    ]);
    out.push(criterion("8 decomposition round trip", (ok, note)));

    let split = records(&report, "filtration-splitting");
    let split_ok = split.iter().all(|c| c.status != Status::Fail)
        && split.iter().filter(|c| c.status == Status::Pass).count() > 0
        && split.iter().all(|c| {
            // skipped exactly when some r(j, k−l+1), 1 ≤ j < l, vanishes
            let l: u32 = param(c, "l").parse().unwrap();
            let sc = StructureConstants::new(n_of(c), delta_of(c));
            let vanishing = (1..l).any(|j| sc.r(j, k_of(c) + 1 - l) == int(0));
            vanishing == (c.status == Status::Skipped)
        });
    let (ok, note) = all_pass(&report, "filtration-members", nd);
    out.push(criterion(
        "9 filtration and splitting",
        (
            ok && split_ok,
            format!("{note}; filtration-splitting: {} records", split.len()),
        ),
    ));

    let ov = records(&report, "ovsienko-splitting");
    let ov_ok = ov
        .iter()
        .any(|c| n_of(c) == 1 && c.status == Status::Pass && c.trials == 25)
        && ov.iter().all(|c| c.status == Status::Pass);
    out.push(criterion(
        "10 Ovsienko splitting",
        (ov_ok, format!("ovsienko-splitting: {} records", ov.len())),
    ));

    let counts = (1..=2).all(|n| sp_generators(n).unwrap().len() == (n + 1) * (2 * n + 3));
    let (ok, note) = combine(&[
        all_pass(&report, "sp-generators", n_count),
        all_pass(&report, "sp-in-sl", n_count),
    ]);
    out.push(criterion("11 algebra sanity", (ok && counts, note)));

    let (ok, note) = combine(&[
        all_pass(&report, "hamiltonian-oracle", n_count),
        all_pass(&report, "bracket-oracle", n_count),
    ]);
    let trials_ok = ["hamiltonian-oracle", "bracket-oracle"]
        .iter()
        .all(|id| records(&report, id).iter().all(|c| c.trials == 25));
    out.push(criterion("12 oracle cross-check", (ok && trials_ok, note)));

    for c in &out {
        println!("{} {:40} {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.note);
    }
    for c in report.failures() {
        println!("failing check: {} {:?} {:?}", c.id, c.params, c.detail);
    }
    let passed = out.iter().filter(|c| c.ok).count();
    println!("acceptance: {passed}/{} criteria pass", out.len());
    if report.failed > 0 || passed < out.len() {
        std::process::exit(1);
    }
}
