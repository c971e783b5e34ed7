use std::fs;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use arclab::bimodules::{check_actions, decompose_left_projective, tensor_over_ring, TangleBimodule};
use arclab::center::{self as z, springer_presentation};
use arclab::complexes::{
    catalog, check_pair, cube_complex, homology, InvariancePair, TangleDiagram, DEFAULT_CROSSING_BOUND,
};
use arclab::level_two::{
    enumerate_tableaux, phi, psi, verify_prop1_prop2, verify_qrel, weight_triple, Direction, HighestWeight, LevelTwo,
    Weight,
};
use arclab::planar::{enumerate_matchings, Compatibility, FlatTangle, Triple};
use arclab::rings::{ArcRing, RingElement};
use arclab::verify::{SuiteConfig, SuiteRegistry};
use arclab::{Error, Result};

use crate::output::report;
use crate::{Global, Outcome, TripleArgs, WeightArgs};

const MAX_POINTS: usize = 14;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn done(command: &str, body: Value, passed: bool) -> Result<Outcome> {
    Ok(Outcome {
        report: report(command, body),
        passed,
    })
}

fn dry(command: &str, inputs: Value) -> Result<Outcome> {
    done(command, json!({"dry_run": true, "valid": true, "inputs": inputs}), true)
}

fn guard_points(t: Triple, g: Global) -> Result<Triple> {
    if t.points() > MAX_POINTS && !g.force {
        return Err(Error::TooLarge(format!(
            "{t} has {} points, above {MAX_POINTS}; pass --force to proceed",
            t.points()
        )));
    }
    Ok(t)
}

fn triple(t: TripleArgs, g: Global) -> Result<Triple> {
    guard_points(Triple::new(t.n, t.k, t.l)?, g)
}

fn platforms(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(Error::Invalid(format!("platforms {s:?} are not two integers"))),
        },
        _ => Err(Error::Invalid(format!("platforms must be given as k,l, got {s:?}"))),
    }
}

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn element(s: &str, dim: usize) -> Result<RingElement> {
    let mut terms = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (i, c) = part.split_once(':').unwrap_or((part, "1"));
        let i: usize = i
            .parse()
            .map_err(|_| Error::Invalid(format!("bad basis index {i:?}")))?;
        let c: i64 = c
            .parse()
            .map_err(|_| Error::Invalid(format!("bad coefficient {c:?}")))?;
        if i >= dim {
            return Err(Error::Invalid(format!("basis index {i} out of range 0..{dim}")));
        }
        terms.push((i, c));
    }
    Ok(RingElement::from_terms(terms))
}

fn describe(ring: &ArcRing, x: &RingElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(i, c)| {
            let b = ring.basis()[i];
            json!({"index": i, "coeff": c, "top": b.top, "bottom": b.bottom, "mask": b.mask, "degree": ring.degree(i)})
        })
        .collect();
    Value::Array(terms)
}

pub fn basis(t: TripleArgs, g: Global) -> Result<Outcome> {
    let t = triple(t, g)?;
    if g.dry_run {
        return dry("basis", json!({"triple": t}));
    }
    let ms = enumerate_matchings(t)?;
    done("basis", json!({"triple": t, "count": ms.len(), "matchings": ms}), true)
}

pub fn multiply(t: TripleArgs, x: &str, y: &str, g: Global) -> Result<Outcome> {
    let t = triple(t, g)?;
    if g.dry_run {
        element(x, usize::MAX)?;
        element(y, usize::MAX)?;
        return dry("multiply", json!({"triple": t, "x": x, "y": y}));
    }
    let ring = ArcRing::build(t)?;
    let (a, b) = (element(x, ring.dim())?, element(y, ring.dim())?);
    let p = ring.multiply(&a, &b);
    let body = json!({
        "triple": t,
        "x": describe(&ring, &a),
        "y": describe(&ring, &b),
        "product": describe(&ring, &p),
    });
    done("multiply", body, true)
}

pub fn ring_dump(t: TripleArgs, products: bool, g: Global) -> Result<Outcome> {
    let t = triple(t, g)?;
    if g.dry_run {
        return dry("ring-dump", json!({"triple": t, "products": products}));
    }
    let ring = ArcRing::build(t)?;
    let basis: Vec<Value> = (0..ring.dim())
        .map(|i| {
            let b = ring.basis()[i];
            json!({"index": i, "top": b.top, "bottom": b.bottom, "mask": b.mask, "degree": ring.degree(i)})
        })
        .collect();
    let mut body = json!({
        "triple": t,
        "dim": ring.dim(),
        "graded_rank": ring.graded_rank(),
        "matchings": ring.matchings(),
        "basis": basis,
    });
    if products {
        let mut table = Vec::new();
        for x in 0..ring.dim() {
            for y in 0..ring.dim() {
                let p = ring.product(x, y);
                if !p.is_empty() {
                    table.push(json!({"x": x, "y": y, "terms": p}));
                }
            }
        }
        body["products"] = Value::Array(table);
    }
    done("ring-dump", body, true)
}

fn flat_triples(t: &FlatTangle, left: &str, right: &str, g: Global) -> Result<(Triple, Triple)> {
    let (kl, ll) = platforms(left)?;
    let (kr, lr) = platforms(right)?;
    let top = guard_points(Triple::new(t.top(), kl, ll)?, g)?;
    let bottom = guard_points(Triple::new(t.bottom(), kr, lr)?, g)?;
    Ok((top, bottom))
}

pub fn bimodule(file: &str, left: &str, right: &str, g: Global) -> Result<Outcome> {
    let t: FlatTangle = read_json(file)?;
    let (lt, rt) = flat_triples(&t, left, right, g)?;
    if g.dry_run {
        return dry("bimodule", json!({"tangle": t, "left": lt, "right": rt}));
    }
    let m = TangleBimodule::build(&t, lt, rt)?;
    let (lr, rr) = (ArcRing::build(lt)?, ArcRing::build(rt)?);
    let actions = check_actions(&m, &lr, &rr)?;
    let mut blocks = Vec::new();
    for c in 0..m.top_matchings().len() {
        for b in 0..m.bottom_matchings().len() {
            let r = m.block_graded_rank(c, b);
            if !r.is_zero() {
                blocks.push(json!({"top": c, "bottom": b, "graded_rank": r}));
            }
        }
    }
    let mut passed = actions.passed();
    let mut body = json!({
        "tangle": t,
        "left": lt,
        "right": rt,
        "dim": m.dim(),
        "graded_rank": m.graded_rank(),
        "blocks": blocks,
        "actions": actions,
    });
    if m.compatibility() != Compatibility::Incompatible {
        let summands = (0..m.bottom_matchings().len())
            .map(|a| decompose_left_projective(&m, &lr, a))
            .collect::<Result<Vec<_>>>()?;
        passed &= summands.iter().all(|s| s.holds);
        body["projective_summands"] = to_value(&summands);
    }
    done("bimodule", body, passed)
}

pub fn tensor_check(first: &str, second: &str, plat: &str, g: Global) -> Result<Outcome> {
    let t1: FlatTangle = read_json(first)?;
    let t2: FlatTangle = read_json(second)?;
    let (k, l) = platforms(plat)?;
    let a = guard_points(Triple::new(t1.bottom(), k, l)?, g)?;
    let b = guard_points(Triple::new(t1.top(), k, l)?, g)?;
    let c = guard_points(Triple::new(t2.top(), k, l)?, g)?;
    if t2.bottom() != t1.top() {
        return Err(Error::Incompatible(format!(
            "second tangle starts on {} points, first ends on {}",
            t2.bottom(),
            t1.top()
        )));
    }
    if g.dry_run {
        return dry("tensor-check", json!({"first": t1, "second": t2, "triples": [a, b, c]}));
    }
    let m1 = TangleBimodule::build(&t1, b, a)?;
    let m2 = TangleBimodule::build(&t2, c, b)?;
    let (rep, _) = tensor_over_ring(&m2, &ArcRing::build(b)?, &m1)?;
    let passed = rep.isomorphism;
    done("tensor-check", json!({"triples": [a, b, c], "report": rep}), passed)
}

fn diagram_triples(d: &TangleDiagram, left: &str, right: &str, g: Global) -> Result<(Triple, Triple, usize)> {
    let (kl, ll) = platforms(left)?;
    let (kr, lr) = platforms(right)?;
    let top = guard_points(Triple::new(d.top(), kl, ll)?, g)?;
    let bottom = guard_points(Triple::new(d.bottom(), kr, lr)?, g)?;
    let bound = if g.force {
        d.crossings().max(DEFAULT_CROSSING_BOUND)
    } else {
        DEFAULT_CROSSING_BOUND
    };
    if d.crossings() > bound {
        return Err(Error::TooLarge(format!(
            "{} crossings, above {bound}; pass --force to proceed",
            d.crossings()
        )));
    }
    Ok((top, bottom, bound))
}

pub fn tangle_homology(file: &str, left: &str, right: &str, g: Global) -> Result<Outcome> {
    let d: TangleDiagram = read_json(file)?;
    let (lt, rt, bound) = diagram_triples(&d, left, right, g)?;
    if g.dry_run {
        return dry("tangle-homology", json!({"diagram": d, "left": lt, "right": rt}));
    }
    let cx = cube_complex(&d, lt, rt, bound)?;
    let h = homology(&cx)?;
    let body = json!({
        "left": lt,
        "right": rt,
        "crossings": d.crossings(),
        "total_rank": h.total_rank(),
        "rows": h.entries,
    });
    done("tangle-homology", body, true)
}

pub fn invariance(files: Option<(&str, &str)>, left: &str, right: &str, g: Global) -> Result<Outcome> {
    let pairs = match files {
        Some((f1, f2)) => {
            let first: TangleDiagram = read_json(f1)?;
            let second: TangleDiagram = read_json(f2)?;
            let (lt, rt, _) = diagram_triples(&first, left, right, g)?;
            let (lt2, rt2, _) = diagram_triples(&second, left, right, g)?;
            if (lt, rt) != (lt2, rt2) {
                return Err(Error::Incompatible("the two diagrams have different boundaries".into()));
            }
            vec![InvariancePair {
                name: format!("{f1} vs {f2}"),
                left: lt,
                right: rt,
                first,
                second,
            }]
        }
        None => catalog(),
    };
    if g.dry_run {
        let names: Vec<&str> = pairs.iter().map(|p| p.name.as_str()).collect();
        return dry("invariance", json!({"pairs": names}));
    }
    let results = pairs.iter().map(check_pair).collect::<Result<Vec<_>>>()?;
    let passed = results.iter().all(|r| r.passed);
    done("invariance", json!({"passed": passed, "pairs": results}), passed)
}

pub fn center(t: TripleArgs, elements: bool, g: Global) -> Result<Outcome> {
    let t = triple(t, g)?;
    if g.dry_run {
        return dry("center", json!({"triple": t}));
    }
    let ring = ArcRing::build(t)?;
    let c = z::center(&ring)?;
    let checks = z::check_center(&ring, &c);
    let zero = z::degree_zero_center(&ring)?;
    let passed = checks.passed() && zero.rank == 1 && zero.spanned_by_unit;
    let mut body = json!({
        "triple": t,
        "rank": c.rank(),
        "graded_rank": c.graded_rank(),
        "checks": checks,
        "degree_zero": zero,
    });
    if elements {
        body["elements"] = to_value(&c.elements);
        body["degrees"] = to_value(&c.degrees);
    }
    done("center", body, passed)
}

pub fn springer(n: usize, m: usize, g: Global) -> Result<Outcome> {
    if g.dry_run {
        Triple::new(n, 0, m)?;
        return dry("springer", json!({"n": n, "m": m}));
    }
    let p = springer_presentation(n, m)?;
    let body = json!({"rank": p.rank(), "poincare": p.poincare(), "presentation": p});
    done("springer", body, true)
}

pub fn center_vs_springer(n: usize, m: usize, g: Global) -> Result<Outcome> {
    guard_points(Triple::new(n, 0, m)?, g)?;
    if g.dry_run {
        return dry("center-vs-springer", json!({"n": n, "m": m}));
    }
    let r = z::center_vs_springer(n, m)?;
    let passed = r.passed();
    done("center-vs-springer", json!({"passed": passed, "report": r}), passed)
}

pub fn cell_count(n: usize, m: usize, g: Global) -> Result<Outcome> {
    guard_points(Triple::new(n, 0, m)?, g)?;
    if g.dry_run {
        return dry("cell-count", json!({"n": n, "m": m}));
    }
    let cells = z::cell_count(n, m)?;
    done("cell-count", json!({"n": n, "m": m, "cells": cells.to_string()}), true)
}

fn highest_weight(w: WeightArgs, g: Global) -> Result<HighestWeight> {
    let hw = HighestWeight::new(w.big_n, w.s, w.k)?;
    // the largest ring has m(μ) + k ≤ N + k points
    if hw.n + hw.k > MAX_POINTS && !g.force {
        return Err(Error::TooLarge(format!(
            "rings of {hw} reach {} points, above {MAX_POINTS}; pass --force to proceed",
            hw.n + hw.k
        )));
    }
    Ok(hw)
}

pub fn weights(w: WeightArgs, g: Global) -> Result<Outcome> {
    let hw = highest_weight(w, g)?;
    if g.dry_run {
        return dry("weights", json!({"highest_weight": hw}));
    }
    let mut total = 0;
    let mut rows = Vec::new();
    for mu in hw.admissible_weights() {
        let dim = enumerate_tableaux(&hw, &mu)?.len();
        total += dim;
        rows.push(json!({"mu": mu, "m": mu.m(), "dim": dim}));
    }
    let body = json!({"highest_weight": hw, "lambda": hw.lambda(), "dim": total, "weights": rows});
    done("weights", body, true)
}

fn parse_weight(s: &str) -> Result<Weight> {
    let v = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u8>()
                .map_err(|_| Error::Invalid(format!("bad weight entry {x:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Weight::new(v)
}

pub fn bijection(w: WeightArgs, mu: Option<&str>, g: Global) -> Result<Outcome> {
    let hw = highest_weight(w, g)?;
    let selected = match mu {
        Some(s) => {
            let mu = parse_weight(s)?;
            if !hw.is_admissible(&mu) {
                return Err(Error::Invalid(format!("{mu} is not a weight of {hw}")));
            }
            vec![mu]
        }
        None => hw.admissible_weights(),
    };
    if g.dry_run {
        return dry("bijection", json!({"highest_weight": hw, "weights": selected}));
    }
    let mut passed = true;
    let mut rows = Vec::new();
    for mu in selected {
        let ts = enumerate_tableaux(&hw, &mu)?;
        let count = enumerate_matchings(weight_triple(&hw, &mu)?)?.len();
        passed &= ts.len() == count;
        let mut pairs = Vec::new();
        for t in &ts {
            let a = phi(&hw, t)?;
            let back = psi(&hw, &mu, &a)?;
            passed &= &back == t;
            pairs.push(json!({"tableau": t, "matching": a, "roundtrip": &back == t}));
        }
        rows.push(json!({"mu": mu, "matchings": count, "pairs": pairs}));
    }
    done(
        "bijection",
        json!({"highest_weight": hw, "passed": passed, "weights": rows}),
        passed,
    )
}

pub fn kgroup(w: WeightArgs, i: Option<usize>, verify: bool, g: Global) -> Result<Outcome> {
    let hw = highest_weight(w, g)?;
    if let Some(i) = i {
        hw.check_index(i)?;
    }
    if g.dry_run {
        return dry("kgroup", json!({"highest_weight": hw, "i": i, "verify": verify}));
    }
    let lt = LevelTwo::build(hw)?;
    let blocks: Vec<Value> = lt
        .weights()
        .iter()
        .enumerate()
        .map(|(k, mu)| json!({"mu": mu, "offset": lt.offset(k), "matchings": lt.ring(k).matchings()}))
        .collect();
    let indices: Vec<usize> = match i {
        Some(i) => vec![i],
        None => (1..hw.n).collect(),
    };
    let mut matrices = Vec::new();
    for &i in &indices {
        for (name, dir) in [("E", Direction::E), ("F", Direction::F)] {
            let m = lt.kgroup_matrix(i, dir)?;
            let entries: Vec<Value> = m
                .entries()
                .map(|(r, c, p)| {
                    let (wr, wc) = (lt.weight_of(r), lt.weight_of(c));
                    json!({
                        "row_weight": lt.weights()[wr],
                        "row": r - lt.offset(wr),
                        "col_weight": lt.weights()[wc],
                        "col": c - lt.offset(wc),
                        "value": p,
                    })
                })
                .collect();
            matrices.push(json!({"functor": name, "i": i, "entries": entries}));
        }
    }
    let mut body = json!({"highest_weight": hw, "rank": lt.rank(), "blocks": blocks, "matrices": matrices});
    let mut passed = true;
    if verify {
        let q = verify_qrel(hw)?;
        let p = verify_prop1_prop2(hw)?;
        passed = q.passed() && p.passed();
        body["relations"] = to_value(&q);
        body["propositions"] = to_value(&p);
        body["passed"] = json!(passed);
    }
    done("kgroup", body, passed)
}

pub fn verify(
    suite: &str,
    max_points: Option<usize>,
    seed: u64,
    samples: usize,
    list: bool,
    g: Global,
) -> Result<Outcome> {
    let reg = SuiteRegistry::standard();
    if list {
        let rows: Vec<Value> = reg
            .suites()
            .map(|s| json!({"name": s.name(), "criterion": s.criterion(), "description": s.description()}))
            .collect();
        return done("verify", json!({"suites": rows}), true);
    }
    let selected = reg.select(suite)?;
    let cfg = SuiteConfig {
        max_points,
        seed,
        samples,
    };
    if g.dry_run {
        let names: Vec<&str> = selected.iter().map(|s| s.name()).collect();
        return dry("verify", json!({"suites": names, "config": cfg}));
    }
    let outcomes = selected.iter().map(|s| s.run(&cfg)).collect::<Result<Vec<_>>>()?;
    let passed = outcomes.iter().all(|o| o.passed);
    let body = json!({
        "config": cfg,
        "verdict": if passed { "PASS" } else { "FAIL" },
        "suites": outcomes,
    });
    done("verify", body, passed)
}
