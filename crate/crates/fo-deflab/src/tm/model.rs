//! The computation graph of a halting machine, witness assignments for the
//! compiled sentence, and the model checks.

use super::compile::{compile, CompiledSentence};
use super::machine::{Symbol, TuringMachine};
use super::run::{run_tm, ComputationTrace, RunOutcome};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::semantics::{eval_with_witnesses, holds, Assignment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Vertex layout of a computation graph.
#[derive(Debug, Clone)]
pub struct ModelLayout {
    pub states: usize,
    /// Number of tape cells `1..=cells` represented.
    pub cells: usize,
    /// Number of time steps `0..=steps` represented (rows of the trace).
    pub times: usize,
}

impl ModelLayout {
    pub fn designated(&self) -> usize {
        self.states + 10
    }

    pub fn x(&self) -> usize {
        0
    }
    pub fn x_prime(&self) -> usize {
        1
    }
    pub fn t(&self) -> usize {
        2
    }
    pub fn t_prime(&self) -> usize {
        3
    }
    pub fn z(&self) -> usize {
        4
    }
    pub fn state(&self, i: usize) -> usize {
        debug_assert!((1..=self.states).contains(&i));
        4 + i
    }
    pub fn symbol(&self, s: Symbol) -> usize {
        self.designated()
            - 5
            + match s {
                Symbol::A => 0,
                Symbol::B => 1,
                Symbol::Blank => 2,
                Symbol::L => 3,
            }
    }
    pub fn head_marker(&self) -> usize {
        self.designated() - 1
    }
    /// Cell vertex for 1-based cell `c`.
    pub fn cell(&self, c: usize) -> usize {
        debug_assert!((1..=self.cells).contains(&c));
        self.designated() + c - 1
    }
    pub fn cell_column(&self, c: usize) -> usize {
        self.designated() + self.cells + c - 1
    }
    /// Time vertex for time `τ` (0-based).
    pub fn time(&self, tau: usize) -> usize {
        debug_assert!(tau < self.times);
        self.designated() + 2 * self.cells + tau
    }
    pub fn time_column(&self, tau: usize) -> usize {
        self.designated() + 2 * self.cells + self.times + tau
    }
    /// Grid vertex for (cell `c`, time `τ`).
    pub fn grid(&self, c: usize, tau: usize) -> usize {
        self.designated() + 2 * (self.cells + self.times) + (c - 1) * self.times + tau
    }
    pub fn order(&self) -> usize {
        self.designated() + 2 * (self.cells + self.times) + self.cells * self.times
    }
}

/// A built computation graph with its intended witnesses.
#[derive(Debug, Clone)]
pub struct Model {
    pub graph: Graph,
    pub witnesses: Assignment,
    pub layout: ModelLayout,
}

/// Build the computation graph `G_M` of a machine that halts within
/// `max_steps`, together with the witness assignment for the leading
/// existential block of the compiled sentence.
pub fn build_model(m: &TuringMachine, max_steps: usize) -> Result<Model> {
    let trace = match run_tm(m, max_steps)? {
        RunOutcome::Halted(t) => t,
        RunOutcome::Timeout(cap) => return Err(Error::Timeout(cap)),
    };
    build_from_trace(m, &trace)
}

fn build_from_trace(m: &TuringMachine, trace: &ComputationTrace) -> Result<Model> {
    let layout = ModelLayout {
        states: m.states,
        // the rightmost cell must be used and the head must stay within range
        cells: trace.rightmost_used().max(trace.max_head()),
        times: trace.steps + 1,
    };
    let mut g = Graph::empty(layout.order())?;
    // stars around the five set vertices
    for c in 1..=layout.cells {
        g.add_edge(layout.x(), layout.cell(c))?;
        g.add_edge(layout.x_prime(), layout.cell_column(c))?;
    }
    for tau in 0..layout.times {
        g.add_edge(layout.t(), layout.time(tau))?;
        g.add_edge(layout.t_prime(), layout.time_column(tau))?;
    }
    // ladders: cell i is adjacent to columns 1..=i
    for i in 1..=layout.cells {
        for j in 1..=i {
            g.add_edge(layout.cell(i), layout.cell_column(j))?;
        }
    }
    for i in 0..layout.times {
        for j in 0..=i {
            g.add_edge(layout.time(i), layout.time_column(j))?;
        }
    }
    // the grid: coordinates, symbols, head, states
    for c in 1..=layout.cells {
        for tau in 0..layout.times {
            let w = layout.grid(c, tau);
            g.add_edge(layout.z(), w)?;
            g.add_edge(w, layout.cell(c))?;
            g.add_edge(w, layout.time(tau))?;
            let sym = trace
                .tapes[tau]
                .get(c - 1)
                .copied()
                .unwrap_or(Symbol::Blank);
            g.add_edge(w, layout.symbol(sym))?;
            if trace.heads[tau] == c {
                g.add_edge(w, layout.head_marker())?;
            }
        }
    }
    for tau in 0..layout.times {
        g.add_edge(layout.time(tau), layout.state(trace.states[tau]))?;
    }
    // intended witnesses, in the block order of the compiled sentence
    let compiled = compile(m)?;
    let mut witnesses = Assignment::new();
    let d = &compiled.vars;
    witnesses.insert(d.x, layout.x());
    witnesses.insert(d.x_prime, layout.x_prime());
    witnesses.insert(d.t, layout.t());
    witnesses.insert(d.t_prime, layout.t_prime());
    witnesses.insert(d.z, layout.z());
    for (i, &sv) in d.states.iter().enumerate() {
        witnesses.insert(sv, layout.state(i + 1));
    }
    witnesses.insert(d.sym_a, layout.symbol(Symbol::A));
    witnesses.insert(d.sym_b, layout.symbol(Symbol::B));
    witnesses.insert(d.sym_blank, layout.symbol(Symbol::Blank));
    witnesses.insert(d.sym_left, layout.symbol(Symbol::L));
    witnesses.insert(d.head, layout.head_marker());
    Ok(Model {
        graph: g,
        witnesses,
        layout,
    })
}

/// Results of checking a machine's computation graph against its sentence.
#[derive(Debug)]
pub struct ModelReport {
    pub order: usize,
    pub running_time: usize,
    pub axioms_hold: bool,
    pub witnesses_satisfy_body: bool,
    /// `(edge, falsified)` for each sampled single-edge perturbation.
    pub perturbations: Vec<((usize, usize), bool)>,
}

impl ModelReport {
    pub fn all_ok(&self) -> bool {
        self.axioms_hold
            && self.witnesses_satisfy_body
            && self.perturbations.iter().all(|&(_, f)| f)
    }
}

/// Check that the computation graph satisfies the sentence under the
/// intended witnesses and that sampled single-edge perturbations all
/// falsify it.
pub fn verify_model(
    m: &TuringMachine,
    max_steps: usize,
    samples: usize,
    seed: u64,
) -> Result<ModelReport> {
    let compiled = compile(m)?;
    let model = build_model(m, max_steps)?;
    let report = verify_built(&compiled, &model, samples, seed)?;
    Ok(report)
}

pub fn verify_built(
    compiled: &CompiledSentence,
    model: &Model,
    samples: usize,
    seed: u64,
) -> Result<ModelReport> {
    let axioms_hold = holds(&crate::formula::graph_axioms(), &model.graph)?;
    let witnesses_satisfy_body =
        eval_with_witnesses(&compiled.existential, &model.graph, &model.witnesses)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = model.graph.order();
    let mut perturbations = Vec::new();
    let workers = crate::worker_threads().max(1);
    let mut edges = Vec::new();
    while edges.len() < samples {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    let results: Vec<Result<((usize, usize), bool)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in edges.chunks(edges.len().div_ceil(workers)) {
            let chunk = chunk.to_vec();
            let graph = &model.graph;
            let witnesses = &model.witnesses;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for (u, v) in chunk {
                    let mut g = graph.clone();
                    g.toggle_edge(u, v);
                    let r = eval_with_witnesses(&compiled.existential, &g, witnesses)
                        .map(|sat| ((u, v), !sat));
                    out.push(r);
                }
                out
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    for r in results {
        perturbations.push(r?);
    }
    Ok(ModelReport {
        order: model.graph.order(),
        running_time: model.layout.times - 1,
        axioms_hold,
        witnesses_satisfy_body,
        perturbations,
    })
}

/// The canonical ladder of the given width: two poles with their rows and
/// columns, row `i` adjacent to columns `1..=i`. Satisfies the ordering
/// gadget with `x = 0`, `x' = 1`; rows are `2..2+width`, columns follow.
pub fn canonical_ladder(width: usize) -> Graph {
    let mut g = Graph::empty(2 + 2 * width).expect("within cap");
    for i in 1..=width {
        g.add_edge(0, 1 + i).unwrap();
        g.add_edge(1, 1 + width + i).unwrap();
        for j in 1..=i {
            g.add_edge(1 + i, 1 + width + j).unwrap();
        }
    }
    g
}

/// The canonical coordinatized graph: two ladders of the given widths plus
/// the full grid. Satisfies the standalone coordinatization formula with
/// `x = 0, x' = 1, t = 2, t' = 3, z = 4`.
pub fn canonical_coordinatized(cells: usize, times: usize) -> Graph {
    let base = 5;
    let cell = |c: usize| base + c - 1;
    let col = |c: usize| base + cells + c - 1;
    let time = |t: usize| base + 2 * cells + t - 1;
    let tcol = |t: usize| base + 2 * cells + times + t - 1;
    let grid = |c: usize, t: usize| base + 2 * (cells + times) + (c - 1) * times + t - 1;
    let mut g = Graph::empty(base + 2 * (cells + times) + cells * times).expect("within cap");
    for c in 1..=cells {
        g.add_edge(0, cell(c)).unwrap();
        g.add_edge(1, col(c)).unwrap();
        for j in 1..=c {
            g.add_edge(cell(c), col(j)).unwrap();
        }
    }
    for t in 1..=times {
        g.add_edge(2, time(t)).unwrap();
        g.add_edge(3, tcol(t)).unwrap();
        for j in 1..=t {
            g.add_edge(time(t), tcol(j)).unwrap();
        }
    }
    for c in 1..=cells {
        for t in 1..=times {
            g.add_edge(4, grid(c, t)).unwrap();
            g.add_edge(grid(c, t), cell(c)).unwrap();
            g.add_edge(grid(c, t), time(t)).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::super::machine::corpus_machine;
    use super::*;

    #[test]
    fn two_state_model_has_24_vertices() {
        let model = build_model(&corpus_machine(2), 100).unwrap();
        assert_eq!(model.graph.order(), 24);
        assert_eq!(model.layout.cells, 2);
        assert_eq!(model.layout.times, 2);
    }

    #[test]
    fn model_order_exceeds_running_time() {
        for k in 2..=6 {
            let m = corpus_machine(k);
            let model = build_model(&m, 100).unwrap();
            assert!(model.graph.order() > model.layout.times - 1, "k = {k}");
        }
    }

    #[test]
    fn non_halting_machine_times_out() {
        let m = super::super::machine::looping_machine();
        assert!(matches!(
            build_model(&m, 50),
            Err(Error::Timeout(50))
        ));
    }

    #[test]
    fn witnesses_satisfy_the_two_state_sentence() {
        let m = corpus_machine(2);
        let compiled = compile(&m).unwrap();
        let model = build_model(&m, 100).unwrap();
        assert!(holds(&crate::formula::graph_axioms(), &model.graph).unwrap());
        assert!(
            eval_with_witnesses(&compiled.existential, &model.graph, &model.witnesses).unwrap()
        );
    }

    #[test]
    fn targeted_perturbations_falsify() {
        let m = corpus_machine(2);
        let compiled = compile(&m).unwrap();
        let model = build_model(&m, 100).unwrap();
        // removing the symbol edge of grid cell (2, 1) breaks the
        // exactly-one-symbol clause
        let mut g = model.graph.clone();
        let w = model.layout.grid(2, 1);
        g.remove_edge(w, model.layout.symbol(Symbol::A));
        assert!(!eval_with_witnesses(&compiled.existential, &g, &model.witnesses).unwrap());
        // a spurious edge inside the grid breaks independence
        let mut g = model.graph.clone();
        g.add_edge(model.layout.grid(1, 0), model.layout.grid(2, 1))
            .unwrap();
        assert!(!eval_with_witnesses(&compiled.existential, &g, &model.witnesses).unwrap());
    }
}
