//! Desk-scale verification of the flow-function axioms on a ball.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{default_budget, DirectedEdge, StackMap, StackingStructure, DEFAULT_BUDGET_RADIUS};
use crate::fsa::Fsa;
use crate::words::{Letter, Word};

const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    PrefixClosure,
    GuardPartition,
    Boundedness,
    TreeEdges,
    Endpoints,
    OracleAgreement,
    WellFounded,
    Relators,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::PrefixClosure,
        Check::GuardPartition,
        Check::Boundedness,
        Check::TreeEdges,
        Check::Endpoints,
        Check::OracleAgreement,
        Check::WellFounded,
        Check::Relators,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Check::PrefixClosure => "prefix closure of normal forms",
            Check::GuardPartition => "guard partition and coverage",
            Check::Boundedness => "boundedness",
            Check::TreeEdges => "(F2d) tree edges fixed",
            Check::Endpoints => "(F1) flow paths keep endpoints",
            Check::OracleAgreement => "agreement with independent oracle",
            Check::WellFounded => "(F2r) well-founded flow order",
            Check::Relators => "relator closure",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Check::PrefixClosure => "prefix_closure",
            Check::GuardPartition => "guard_partition",
            Check::Boundedness => "boundedness",
            Check::TreeEdges => "f2d",
            Check::Endpoints => "f1",
            Check::OracleAgreement => "oracle",
            Check::WellFounded => "f2r",
            Check::Relators => "relators",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    /// Number of items (edges, words, rule pairs…) examined.
    pub examined: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
    pub note: String,
}

impl CheckResult {
    fn new(check: Check) -> Self {
        CheckResult { check, passed: true, examined: 0, failures: 0, witnesses: Vec::new(), note: String::new() }
    }

    fn fail(&mut self, witness: String) {
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub structure: String,
    pub radius: usize,
    pub ball_size: usize,
    pub edges: usize,
    /// Longest flow path observed on the ball.
    pub max_flow_length: usize,
    pub declared_bound: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, check: Check) -> &CheckResult {
        self.checks.iter().find(|c| c.check == check).expect("every check is reported")
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "structure {}: radius {}, {} normal forms, {} edges, max flow length {} (declared bound {})",
            self.structure, self.radius, self.ball_size, self.edges, self.max_flow_length, self.declared_bound
        )?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "[{status}] {} ({} examined", c.check.label(), c.examined)?;
            if c.failures > 0 {
                write!(f, ", {} failures", c.failures)?;
            }
            write!(f, ")")?;
            if !c.note.is_empty() {
                write!(f, " {}", c.note)?;
            }
            writeln!(f)?;
            for w in &c.witnesses {
                writeln!(f, "    witness: {w}")?;
            }
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

struct Ctx<'a> {
    s: &'a StackingStructure,
    budget: usize,
}

impl Ctx<'_> {
    fn show(&self, w: &[Letter]) -> String {
        self.s.alphabet().display(w)
    }

    fn edge(&self, y: &[Letter], a: Letter) -> String {
        format!("({}, {})", self.show(y), self.s.alphabet().name(a))
    }

    fn run(&self, y: &Word, w: &[Letter]) -> crate::Result<Word> {
        self.s.run_letters(y, w, self.budget)
    }
}

pub(super) fn verify(s: &StackingStructure, r: usize) -> VerifyReport {
    let budget =
        s.explicit_budget().unwrap_or_else(|| default_budget(s.bound(), (r as u32).max(DEFAULT_BUDGET_RADIUS)));
    let cx = Ctx { s, budget };
    let mut results: BTreeMap<Check, CheckResult> = Check::ALL.iter().map(|&c| (c, CheckResult::new(c))).collect();
    let mut report = VerifyReport {
        structure: s.name().into(),
        radius: r,
        ball_size: 0,
        edges: 0,
        max_flow_length: 0,
        declared_bound: s.bound(),
        checks: Vec::new(),
    };

    let ball: Vec<Word> = match s.ball_layers(r) {
        Ok(layers) => {
            let mut b: Vec<Word> = layers.into_iter().flatten().collect();
            b.sort();
            b
        }
        Err(e) => {
            for c in results.values_mut() {
                c.passed = false;
                c.note = format!("ball of radius {r} could not be computed: {e}");
            }
            report.checks = results.into_values().collect();
            return report;
        }
    };
    report.ball_size = ball.len();

    check_prefix_closure(&cx, &ball, results.get_mut(&Check::PrefixClosure).unwrap());
    check_rules_exactly(&cx, &mut results);

    let oracle = s.oracle();
    if oracle.is_none() {
        results.get_mut(&Check::OracleAgreement).unwrap().note = "(no oracle attached)".into();
        results.get_mut(&Check::Endpoints).unwrap().note = "(round trips only, no oracle attached)".into();
    }
    let mut arcs: Vec<(DirectedEdge, DirectedEdge)> = Vec::new();
    let mut non_tree: BTreeMap<DirectedEdge, Word> = BTreeMap::new();

    for y in &ball {
        for a in s.alphabet().letters() {
            report.edges += 1;
            let tree = s.is_tree_edge(y, a).unwrap_or(false);
            let out = {
                let c = results.get_mut(&Check::GuardPartition).unwrap();
                c.examined += 1;
                match s.stack(y, a) {
                    Ok(out) => out,
                    Err(e) => {
                        c.fail(format!("{}: {e}", cx.edge(y, a)));
                        continue;
                    }
                }
            };
            report.max_flow_length = report.max_flow_length.max(out.len());
            {
                let c = results.get_mut(&Check::Boundedness).unwrap();
                c.examined += 1;
                if out.len() > s.bound() {
                    c.fail(format!("{} -> {} has length {} > {}", cx.edge(y, a), cx.show(&out), out.len(), s.bound()));
                }
            }
            {
                let c = results.get_mut(&Check::TreeEdges).unwrap();
                if tree {
                    c.examined += 1;
                    if out.len() != 1 || out[0] != a {
                        c.fail(format!("tree edge {} -> {}", cx.edge(y, a), cx.show(&out)));
                    }
                }
            }
            let target = match cx.run(y, &[a]) {
                Ok(t) => t,
                Err(e) => {
                    results.get_mut(&Check::WellFounded).unwrap().fail(format!("{}: {e}", cx.edge(y, a)));
                    continue;
                }
            };
            results.get_mut(&Check::WellFounded).unwrap().examined += 1;
            {
                // the edge must come back: (target, a⁻¹) ends at y
                let c = results.get_mut(&Check::Endpoints).unwrap();
                c.examined += 1;
                match cx.run(&target, &[s.alphabet().inverse(a)]) {
                    Ok(back) if back == *y => {}
                    Ok(back) => c.fail(format!(
                        "{}: the path {} ends at {}, but returning along {} leads to {}",
                        cx.edge(y, a),
                        cx.show(&out),
                        cx.show(&target),
                        s.alphabet().name(s.alphabet().inverse(a)),
                        cx.show(&back)
                    )),
                    Err(e) => c.fail(format!("{}: {e}", cx.edge(y, a))),
                }
            }
            if let Some(o) = oracle {
                let by_edge = (o.normalize)(&y.with(a));
                {
                    let c = results.get_mut(&Check::Endpoints).unwrap();
                    let by_path = (o.normalize)(&y.concat(&out));
                    if by_edge != by_path {
                        c.fail(format!(
                            "{}: the path {} ends at {} but the edge ends at {}",
                            cx.edge(y, a),
                            cx.show(&out),
                            cx.show(&by_path),
                            cx.show(&by_edge)
                        ));
                    }
                }
                let c = results.get_mut(&Check::OracleAgreement).unwrap();
                c.examined += 1;
                if by_edge != target {
                    c.fail(format!(
                        "{}: normalizer gives {}, oracle gives {}",
                        cx.edge(y, a),
                        cx.show(&target),
                        cx.show(&by_edge)
                    ));
                }
            }
            if !tree {
                let e = DirectedEdge::new(y.clone(), a);
                non_tree.insert(e.clone(), target);
                let mut cur = y.clone();
                for &x in out.iter() {
                    let here = DirectedEdge::new(cur.clone(), x);
                    let next = match cx.run(&cur, &[x]) {
                        Ok(n) => n,
                        Err(_) => break,
                    };
                    if !s.is_tree_edge(&cur, x).unwrap_or(true) {
                        non_tree.entry(here.clone()).or_insert_with(|| next.clone());
                        arcs.push((e.clone(), here));
                    }
                    cur = next;
                }
            }
        }
    }

    check_acyclic(&cx, &non_tree, &arcs, results.get_mut(&Check::WellFounded).unwrap());
    check_relators(&cx, &ball, results.get_mut(&Check::Relators).unwrap());

    report.checks = results.into_values().collect();
    report
}

fn check_prefix_closure(cx: &Ctx, ball: &[Word], c: &mut CheckResult) {
    let n = cx.s.normal_forms();
    c.examined += 1;
    if !n.is_prefix_closed() {
        let mut witness = String::from("normal-form acceptor is not prefix-closed");
        for w in n.enumerate(ball.iter().map(|w| w.len()).max().unwrap_or(0) + 2) {
            if (0..w.len()).any(|i| !n.accepts(&w[..i])) {
                let letters: Vec<Letter> = w.iter().map(|&s| Letter(s as u32)).collect();
                witness = format!("{} is a normal form but one of its prefixes is not", cx.show(&letters));
                break;
            }
        }
        c.fail(witness);
    }
    for y in ball {
        c.examined += 1;
        if !cx.s.is_normal_form(y) {
            c.fail(format!("ball element {} is not accepted", cx.show(y)));
        } else if let Some(i) = (0..y.len()).find(|&i| !cx.s.is_normal_form(&y[..i])) {
            c.fail(format!("prefix {} of {} is not accepted", cx.show(&y[..i]), cx.show(y)));
        }
    }
}

/// Exact automaton checks available when the stacking map is a rule list:
/// guards inside `N`, pairwise disjoint per letter, covering `N`; outputs bounded.
fn check_rules_exactly(cx: &Ctx, results: &mut BTreeMap<Check, CheckResult>) {
    let s = cx.s;
    let rules = match s.stack_map() {
        StackMap::Rules(r) => r,
        StackMap::Opaque(_) => {
            results.get_mut(&Check::GuardPartition).unwrap().note = "(opaque map: enumeration only)".into();
            return;
        }
    };
    let show_symbols = |w: &[usize]| -> String {
        let letters: Vec<Letter> = w.iter().map(|&x| Letter(x as u32)).collect();
        cx.show(&letters)
    };
    let n = s.normal_forms();
    {
        let c = results.get_mut(&Check::Boundedness).unwrap();
        for (i, r) in rules.iter().enumerate() {
            c.examined += 1;
            if r.output.len() > s.bound() {
                c.fail(format!(
                    "rule {i} ({}) outputs {} of length {} > {}",
                    s.alphabet().name(r.letter),
                    cx.show(&r.output),
                    r.output.len(),
                    s.bound()
                ));
            }
        }
    }
    let c = results.get_mut(&Check::GuardPartition).unwrap();
    let mut by_letter: Vec<Vec<usize>> = vec![Vec::new(); s.alphabet().len()];
    for (i, r) in rules.iter().enumerate() {
        by_letter[r.letter.index()].push(i);
        c.examined += 1;
        match r.guard.difference(n) {
            Ok(extra) => {
                if let Some(w) = extra.shortest_word() {
                    c.fail(format!("guard of rule {i} accepts non-normal form {}", show_symbols(&w)));
                }
            }
            Err(e) => c.fail(format!("rule {i}: {e}")),
        }
    }
    for (a, ids) in by_letter.iter().enumerate() {
        let name = s.alphabet().name(Letter(a as u32));
        for (p, &i) in ids.iter().enumerate() {
            for &j in &ids[p + 1..] {
                c.examined += 1;
                if let Ok(both) = rules[i].guard.intersect(&rules[j].guard) {
                    if let Some(w) = both.intersect(n).ok().and_then(|f| f.shortest_word()) {
                        c.fail(format!("rules {i} and {j} for {name} overlap on {}", show_symbols(&w)));
                    }
                }
            }
        }
        let guards: Vec<&Fsa> = ids.iter().map(|&i| &rules[i].guard).collect();
        c.examined += 1;
        if let Ok(union) = Fsa::union_all(&guards, n.num_symbols()) {
            if let Some(w) = n.difference(&union).ok().and_then(|f| f.shortest_word()) {
                c.fail(format!("no rule for {name} covers normal form {}", show_symbols(&w)));
            }
        }
    }
    if c.passed {
        c.note = "(exact: guards ⊆ N, pairwise disjoint, covering N)".into();
    }
}

/// The flow order restricted to the ball must have no cycles. Nodes are
/// directed edges. The variant that identifies each edge with its reverse
/// is computed as well and reported in the note.
fn check_acyclic(
    cx: &Ctx,
    non_tree: &BTreeMap<DirectedEdge, Word>,
    arcs: &[(DirectedEdge, DirectedEdge)],
    c: &mut CheckResult,
) {
    let alphabet = cx.s.alphabet();
    let merged = |e: &DirectedEdge| -> DirectedEdge {
        match non_tree.get(e) {
            Some(target) => {
                let rev = DirectedEdge::new(target.clone(), alphabet.inverse(e.letter));
                if rev < *e {
                    rev
                } else {
                    e.clone()
                }
            }
            None => e.clone(),
        }
    };
    let directed = find_cycle(arcs, |e| e.clone());
    let undirected = find_cycle(arcs, merged);
    let show_cycle = |cycle: &[DirectedEdge]| -> String {
        let parts: Vec<String> = cycle.iter().map(|e| cx.edge(&e.source, e.letter)).collect();
        parts.join(" > ")
    };
    match directed {
        Some(cycle) => c.fail(format!("flow order has a cycle: {}", show_cycle(&cycle))),
        None => {
            c.note = format!("(certified on the ball: {} non-tree edges, {} dependencies", non_tree.len(), arcs.len());
            match undirected {
                None => c.note.push_str("; also acyclic with reverse edges identified)"),
                Some(cycle) => c
                    .note
                    .push_str(&format!("; with reverse edges identified there is a cycle {})", show_cycle(&cycle))),
            }
        }
    }
}

/// A cycle in the graph with arcs `node(from) -> node(to)`, if any.
fn find_cycle(
    arcs: &[(DirectedEdge, DirectedEdge)],
    node: impl Fn(&DirectedEdge) -> DirectedEdge,
) -> Option<Vec<DirectedEdge>> {
    let mut ids: BTreeMap<DirectedEdge, usize> = BTreeMap::new();
    let mut names: Vec<DirectedEdge> = Vec::new();
    let mut succ: Vec<BTreeSet<usize>> = Vec::new();
    let mut id = |e: DirectedEdge| -> usize {
        *ids.entry(e.clone()).or_insert_with(|| {
            succ.push(BTreeSet::new());
            names.push(e);
            succ.len() - 1
        })
    };
    let pairs: Vec<(usize, usize)> = arcs.iter().map(|(f, t)| (id(node(f)), id(node(t)))).collect();
    for (f, t) in pairs {
        succ[f].insert(t);
    }
    let succ: Vec<Vec<usize>> = succ.into_iter().map(|s| s.into_iter().collect()).collect();
    // iterative three-colour depth-first search
    let n = succ.len();
    let mut colour = vec![0u8; n];
    for root in 0..n {
        if colour[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        colour[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = succ[v].get(*i) {
                *i += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let from = stack.iter().position(|&(u, _)| u == w).unwrap();
                        let mut cycle: Vec<DirectedEdge> =
                            stack[from..].iter().map(|&(u, _)| names[u].clone()).collect();
                        cycle.push(names[w].clone());
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                colour[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

fn check_relators(cx: &Ctx, ball: &[Word], c: &mut CheckResult) {
    for rho in cx.s.relators() {
        for y in ball {
            c.examined += 1;
            match cx.run(y, rho) {
                Ok(z) if z == *y => {}
                Ok(z) => c.fail(format!("{} · {} normalizes to {}", cx.show(y), cx.show(rho), cx.show(&z))),
                Err(e) => c.fail(format!("{} · {}: {e}", cx.show(y), cx.show(rho))),
            }
        }
    }
    if cx.s.relators().is_empty() {
        c.note = "(no relators)".into();
    }
}
