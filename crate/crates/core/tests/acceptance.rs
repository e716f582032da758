//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cohere_core::coherence::{check_coherence, check_coherence_oracle};
use cohere_core::constituents::{build_constituents, point_matrix};
use cohere_core::entailment::{
    class_k, classify, extension_coherent, greatest_element, p_consistent, p_entails,
    p_entails_oracle, per_subset_test, EntailmentMode, Trichotomy,
};
use cohere_core::quasiconj::{
    bounds_two, gn_includes, qc_lower_bound, quasi_conjunction, quasi_conjunction_of, truth_table,
};
use cohere_core::ratlp::{feasible, maximize_phi, rational};
use cohere_core::{KnowledgeBase, Limits, Outcome, Rational, Vocabulary};
use num_traits::{One, Zero};

use common::*;

type Outcomes = Result<String, String>;

const L: Limits = Limits::DEFAULT;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn r(n: i64, d: i64) -> Rational {
    rational(n, d)
}

fn f5() -> KnowledgeBase {
    let v = vocab(4);
    KnowledgeBase::parse(v, &["C | B", "B | A", "A | A v B", "B | A v B", "D | ~A"]).unwrap()
}

fn cut_rule() -> Outcomes {
    let v = vocab(3);
    let fam = KnowledgeBase::parse(v.clone(), &["C | A & B", "B | A", "C | A"]).unwrap();
    let p = [r(1, 1), r(1, 1), r(0, 1)];
    let table = build_constituents(&fam, &L).map_err(|e| e.to_string())?;
    let c0 = table.c0().ok_or("C0 missing")?;
    let not_a = v.parse_event("~A").unwrap().worlds(&v);
    ensure!(c0.world_set(v.world_count()) == not_a, "C0 is not A^c");

    let q = point_matrix(&table, &p).map_err(|e| e.to_string())?;
    let got: BTreeSet<(Vec<u64>, Vec<Rational>)> = table
        .constituents()
        .iter()
        .zip(&q.rows)
        .map(|(c, row)| (c.worlds().iter().map(|w| w.0).collect(), row.clone()))
        .collect();
    let expected: BTreeSet<(Vec<u64>, Vec<Rational>)> = [
        ("A & B & C", [1, 1, 1]),
        ("A & B & ~C", [0, 1, 0]),
        ("A & ~B & C", [1, 0, 1]),
        ("A & ~B & ~C", [1, 0, 0]),
    ]
    .iter()
    .map(|(text, row)| {
        let worlds = v.parse_event(text).unwrap().worlds(&v).iter().map(|w| w.0).collect();
        (worlds, row.iter().map(|&x| r(x, 1)).collect())
    })
    .collect();
    ensure!(table.m() == 4, "m = {}", table.m());
    ensure!(got == expected, "constituent/point pairs differ: {got:?}");

    let sys = table.sigma(&p).map_err(|e| e.to_string())?;
    ensure!(!feasible(&sys).unwrap().feasible, "system with P = (1,1,0) is feasible");
    ensure!(!check_coherence(&fam, &p, &L).unwrap().coherent, "(1,1,0) coherent");
    ensure!(!check_coherence_oracle(&fam, &p, &L).unwrap(), "oracle says (1,1,0) coherent");

    let qc = quasi_conjunction(&fam.items()[..2]).unwrap();
    let bc_a = v.parse_conditional("B & C | A").unwrap();
    ensure!(qc.equivalent(&bc_a, &v), "C(C|AB, B|A) != BC|A");
    ensure!(gn_includes(&bc_a, fam.get(2).unwrap(), &v), "BC|A not included in C|A");

    let order: Vec<String> = table
        .constituents()
        .iter()
        .map(|c| table.describe(c).display(&v).to_string())
        .collect();
    Ok(format!("constituents in table order: {}", order.join(", ")))
}

fn example_two() -> Outcomes {
    let fam = f5();
    let v = fam.vocab().clone();
    let q = v.parse_conditional("C | A").unwrap();
    ensure!(p_consistent(&fam, &L).unwrap(), "F5 not p-consistent");

    let verdict = p_entails(&fam, &q, &L).map_err(|e| e.to_string())?;
    ensure!(verdict.entails, "F5 does not entail C|A");
    ensure!(verdict.mode == EntailmentMode::ViaSubsetSystem, "mode {:?}", verdict.mode);
    let first = &verdict.trace[0];
    ensure!(first.feasible, "starting system unsolvable");
    // Indices are 0-based here; slot 5 is the appended query C|A.
    let i0 = first.i0.clone().unwrap();
    let family_part: Vec<usize> = i0.iter().copied().filter(|&j| j < 5).collect();
    ensure!(family_part == [0, 1, 2, 3], "family part of I0 = {family_part:?}");
    ensure!(i0 == [0, 1, 2, 3, 5], "I0 = {i0:?}");

    // Recompute every M_j directly on the starting system.
    let p: Vec<Rational> = [1, 1, 1, 1, 1, 0].iter().map(|&x| r(x, 1)).collect();
    let sys = first.table.sigma(&p).unwrap();
    let zero_columns: Vec<usize> = (0..6)
        .filter(|&j| maximize_phi(&sys, &first.table.rows_within_antecedent(j)).unwrap().is_zero())
        .collect();
    ensure!(zero_columns == i0, "direct M_j = 0 columns {zero_columns:?}");

    ensure!(verdict.trace.len() == 2, "{} iterations", verdict.trace.len());
    ensure!(!verdict.trace[1].feasible, "second system solvable");
    ensure!(verdict.s_star.as_deref() == Some(&[0, 1, 2, 3][..]), "S* = {:?}", verdict.s_star);

    let k = class_k(&fam, &q, &L).unwrap();
    let got: BTreeSet<Vec<usize>> = k.members.iter().cloned().collect();
    let expected: BTreeSet<Vec<usize>> = [vec![0, 1, 2, 3], vec![0, 1, 2], vec![0, 2, 3]].into();
    ensure!(got == expected && k.members.len() == 3, "K = {:?}", k.members);
    ensure!(k.greatest.as_deref() == Some(&[0, 1, 2, 3][..]), "greatest {:?}", k.greatest);

    let whole = quasi_conjunction(fam.items()).unwrap();
    let expected = v.parse_conditional("A & B & C v ~A & ~B & D | T").unwrap();
    ensure!(whole.equivalent(&expected, &v), "C(F5) differs");
    let abc = v.parse_conditional("A & B & C | A v B").unwrap();
    for s in [[0, 1, 2], [0, 2, 3]] {
        ensure!(quasi_conjunction_of(&fam, &s).unwrap().equivalent(&abc, &v), "C({s:?}) != ABC|(AvB)");
    }
    Ok("I0 = {1,2,3,4} on F5 plus the query slot 6; S* = {1,2,3,4}; |K| = 3".into())
}

fn table_one() -> Outcomes {
    use Outcome::*;
    let v = Vocabulary::new(["A", "H", "B", "K"]).unwrap();
    let a = v.parse_conditional("A & B & K | H").unwrap();
    let b = v.parse_conditional("B v ~H | K").unwrap();
    ensure!(gn_includes(&a, &b, &v), "pair not included");
    let rows = truth_table(&a, &b, &v).map_err(|e| e.to_string())?;
    let expected = [
        ("H^cK^c", [Void, Void, Void]),
        ("AHBK", [True, True, True]),
        ("H^cBK", [Void, True, True]),
        ("A^cHBK", [False, False, True]),
        ("A^cHK^c", [False, False, Void]),
        ("A^cHB^cK", [False, False, False]),
    ];
    let got: Vec<(&str, [Outcome; 3])> = rows.iter().map(|row| (row.label, row.outcomes)).collect();
    ensure!(got == expected, "rows {got:?}");
    let qc = quasi_conjunction(&[a.clone(), b.clone()]).unwrap();
    ensure!(gn_includes(&a, &qc, &v) && gn_includes(&qc, &b, &v), "inclusion chain broken");
    Ok("six rows reproduced".into())
}

fn cross_oracles() -> Outcomes {
    let mut rng = rng(0xC0_4E_2E);
    let (mut coherent, mut total) = (0, 0);
    while total < 500 {
        let fam = random_family(&mut rng, 3, 4);
        let p = random_assessment(&mut rng, &fam);
        let fast = check_coherence(&fam, &p, &L).unwrap().coherent;
        let slow = check_coherence_oracle(&fam, &p, &L).unwrap();
        ensure!(fast == slow, "coherence disagreement #{total}: {:?} at {:?}", fam, p);
        coherent += fast as usize;
        total += 1;
    }

    let mut rng = common::rng(0xE4_7A_11);
    let (mut entailed, mut instances) = (0, 0);
    while instances < 300 {
        let fam = random_family(&mut rng, 3, 4);
        if !p_consistent(&fam, &L).unwrap() {
            continue;
        }
        let q = random_query(&mut rng, &fam);
        let lp = p_entails(&fam, &q, &L).unwrap().entails;
        let comb = p_entails_oracle(&fam, &q, &L).unwrap();
        ensure!(lp == comb, "entailment disagreement #{instances}: {:?} {:?}", fam, q);
        entailed += lp as usize;
        instances += 1;
    }

    let mut rng = common::rng(0x5_B5E7);
    let (mut checks, mut included) = (0, 0);
    for instance in 0..300 {
        let fam = random_family(&mut rng, 3, 4);
        let q = random_query(&mut rng, &fam);
        for mask in 1u64..(1 << fam.len()) {
            let s = mask_to_indices(mask, fam.len());
            if !p_consistent(&fam.subfamily(&s).unwrap(), &L).unwrap() {
                continue;
            }
            let lp = per_subset_test(&fam, &s, &q, &L).unwrap();
            let comb = gn_includes(&quasi_conjunction_of(&fam, &s).unwrap(), &q, fam.vocab());
            ensure!(lp == comb, "subset disagreement in #{instance} at {s:?}: {:?} {:?}", fam, q);
            checks += 1;
            included += lp as usize;
        }
    }
    Ok(format!(
        "coherence 500 ({coherent} coherent); entailment 300 ({entailed} entailed); \
         per-subset {checks} checks ({included} included) over 300 instances"
    ))
}

fn trichotomy() -> Outcomes {
    let mut rng = rng(0x7_21C0);
    let zs = [r(0, 1), r(1, 2), r(1, 1)];
    let mut counts = [0usize; 3];
    let mut instances = 0;
    while instances < 300 {
        let fam = random_family(&mut rng, 3, 4);
        if !p_consistent(&fam, &L).unwrap() {
            continue;
        }
        let q = random_query(&mut rng, &fam);
        let case = classify(&fam, &q, &L).unwrap();
        let pattern: Vec<bool> = zs
            .iter()
            .map(|z| extension_coherent(&fam, &q, z, &L).unwrap())
            .collect();
        let expected = match case {
            Trichotomy::A1Entails => [false, false, true],
            Trichotomy::A2Interval => [true, true, true],
            Trichotomy::A3NegationEntails => [true, false, false],
        };
        ensure!(pattern == expected, "{case:?} with pattern {pattern:?}: {:?} {:?}", fam, q);
        let negation_entailed = p_entails(&fam, &q.negated(), &L).unwrap().entails;
        let entailed = p_entails(&fam, &q, &L).unwrap().entails;
        let holds = [entailed, !entailed && !negation_entailed, negation_entailed];
        ensure!(
            holds.iter().filter(|&&h| h).count() == 1,
            "cases not exclusive: {holds:?} for {:?} {:?}",
            fam,
            q
        );
        let index = case as usize;
        ensure!(holds[index], "classified {case:?} but predicates {holds:?}");
        counts[index] += 1;
        instances += 1;
    }
    Ok(format!("300 instances: A1 {}, A2 {}, A3 {}", counts[0], counts[1], counts[2]))
}

fn qand() -> Outcomes {
    let mut rng = rng(0x0A_4D);
    let (mut families, mut subsets) = (0, 0);
    while families < 150 {
        let fam = random_family(&mut rng, 3, 4);
        if !p_consistent(&fam, &L).unwrap() {
            continue;
        }
        for mask in 1u64..(1 << fam.len()) {
            let s = mask_to_indices(mask, fam.len());
            let qc = quasi_conjunction_of(&fam, &s).unwrap();
            ensure!(p_entails(&fam, &qc, &L).unwrap().entails, "QAND fails at {s:?}: {:?}", fam);
            subsets += 1;
        }
        families += 1;
    }
    Ok(format!("{families} families, {subsets} subsets"))
}

fn class_k_laws() -> Outcomes {
    let mut rng = rng(0xC1_A55);
    let (mut instances, mut nonempty, mut pairs) = (0, 0, 0);
    while instances < 300 {
        let fam = random_family(&mut rng, 3, 4);
        if !p_consistent(&fam, &L).unwrap() {
            continue;
        }
        let q = random_query(&mut rng, &fam);
        let n = fam.len();
        let k = class_k(&fam, &q, &L).unwrap();
        let members: BTreeSet<u64> = k.members.iter().map(|s| indices_to_mask(s)).collect();
        for &a in &members {
            for &b in &members {
                ensure!(members.contains(&(a | b)), "not additive: {a:b} {b:b} in {:?} {:?}", fam, q);
            }
        }
        for &s in &members {
            for u in 1u64..(1 << n) {
                if members.contains(&u) || u & s != s || u == s {
                    continue;
                }
                pairs += 1;
                ensure!(!members.contains(&(u & !s)), "U\\S in K for S={s:b} U={u:b}: {:?} {:?}", fam, q);
            }
        }
        let union = members.iter().fold(0, |acc, m| acc | m);
        match &k.greatest {
            Some(g) => ensure!(indices_to_mask(g) == union && members.contains(&union), "greatest {g:?}"),
            None => ensure!(members.is_empty(), "missing greatest"),
        }
        for s in &k.members {
            let sub = fam.subfamily(s).unwrap();
            ensure!(p_entails(&sub, &q, &L).unwrap().entails, "member {s:?} does not entail");
        }

        let trivial = q.antecedent().implies(q.consequent(), fam.vocab());
        let verdict = p_entails(&fam, &q, &L).unwrap();
        if !trivial {
            ensure!(verdict.entails == !members.is_empty(), "entailment vs nonempty K");
            ensure!(verdict.s_star == k.greatest, "S* {:?} vs greatest {:?}", verdict.s_star, k.greatest);
            ensure!(greatest_element(&fam, &q, &L).unwrap() == k.greatest, "greatest_element");
        }
        nonempty += !members.is_empty() as usize;
        instances += 1;
    }
    Ok(format!("300 instances ({nonempty} with nonempty K), {pairs} member/non-member pairs"))
}

fn bounds() -> Outcomes {
    let v = Vocabulary::new(["A", "H", "B", "K"]).unwrap();
    let a = v.parse_conditional("A | H").unwrap();
    let b = v.parse_conditional("B | K").unwrap();
    let fam = KnowledgeBase::new(v, vec![a.clone(), b.clone(), quasi_conjunction(&[a, b]).unwrap()]).unwrap();
    let xs = farey(6);
    let base_zs = farey(12);
    let eps = r(1, 1000);
    let (zero, one) = (Rational::zero(), Rational::one());
    let mut checks = 0;
    for x in &xs {
        for y in &xs {
            let bp = bounds_two(x, y).unwrap();
            let t_l = (x + y - &one).max(zero.clone());
            ensure!(bp.lower == t_l, "l({x},{y}) = {}", bp.lower);
            ensure!(qc_lower_bound(&[x.clone(), y.clone()]).unwrap() == t_l, "qc_lower_bound({x},{y})");
            ensure!(bp.lower <= bp.upper && bp.upper <= one, "l > u at ({x},{y})");
            let mut zs = base_zs.clone();
            for edge in [&bp.lower, &bp.upper] {
                zs.extend([edge.clone(), edge - &eps, edge + &eps]);
            }
            zs.retain(|z| *z >= zero && *z <= one);
            zs.sort();
            zs.dedup();
            for z in &zs {
                let p = [x.clone(), y.clone(), z.clone()];
                let coherent = check_coherence(&fam, &p, &L).unwrap().coherent;
                let inside = bp.lower <= *z && *z <= bp.upper;
                ensure!(coherent == inside, "x={x} y={y} z={z}: coherent={coherent}, [l,u]=[{},{}]", bp.lower, bp.upper);
                checks += 1;
            }
        }
    }

    // (1/2, 1/2): the largest coherent grid value is 2/3 and nothing above it survives.
    let half = r(1, 2);
    let coherent_at = |z: &Rational| check_coherence(&fam, &[half.clone(), half.clone(), z.clone()], &L).unwrap().coherent;
    let top = farey(12).into_iter().filter(|z| coherent_at(z)).max().unwrap();
    ensure!(top == r(2, 3) && coherent_at(&zero), "oracle range at (1/2,1/2) tops out at {top}");
    ensure!(!coherent_at(&(r(2, 3) + r(1, 10_000))), "2/3 + 1/10000 coherent");
    let bp = bounds_two(&half, &half).unwrap();
    ensure!(bp.lower == zero && bp.upper == r(2, 3), "bounds_two(1/2,1/2) = ({}, {})", bp.lower, bp.upper);

    let v = vocab(4);
    let fam = KnowledgeBase::parse(v.clone(), &["B & C | A", "B & D | A", "B & C & D | A", "B | A"]).unwrap();
    let q = v.parse_conditional("B | A").unwrap();
    for c in &fam {
        ensure!(gn_includes(c, &q, &v), "member not included");
    }
    let k = class_k(&fam, &q, &L).unwrap();
    ensure!(k.members.len() == 15, "|K| = {}", k.members.len());
    Ok(format!("{} (x,y) pairs, {checks} coherence checks; |K| = 15 for n = 4", xs.len() * xs.len()))
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcomes,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, name: "cut rule", limit: Some(Duration::from_secs(1)), run: cut_rule },
        Criterion { number: 2, name: "F5 end to end", limit: Some(Duration::from_secs(5)), run: example_two },
        Criterion { number: 3, name: "inclusion truth table", limit: None, run: table_one },
        Criterion { number: 4, name: "cross-oracle suites", limit: Some(Duration::from_secs(60)), run: cross_oracles },
        Criterion { number: 5, name: "trichotomy", limit: None, run: trichotomy },
        Criterion { number: 6, name: "QAND", limit: None, run: qand },
        Criterion { number: 7, name: "class K laws", limit: None, run: class_k_laws },
        Criterion { number: 8, name: "two-event bounds", limit: Some(Duration::from_secs(30)), run: bounds },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed >= limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {} {}: PASS in {elapsed:.2?} ({detail})", c.number, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {} {}: FAIL in {elapsed:.2?}: {why}", c.number, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
