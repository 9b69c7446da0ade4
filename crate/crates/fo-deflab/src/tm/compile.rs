//! Compilation of a Turing machine into a first-order sentence about graphs.
//!
//! The sentence says: the graph consists of designated vertices
//! `x, x', t, t', z, s_1..s_k, a, b, B, L, H` together with the
//! neighborhoods `X, X', T, T', Z` of the first five; `X` and `T` carry
//! ladder gadgets that order them (cells and times); `Z` is coordinatized as
//! `X × T`; the symbol, head and state edges encode a halting computation of
//! the machine on the empty input word.
//!
//! Metric contracts, checked after every build: quantifier rank `k + 16`,
//! alternation number 3, length `O(k²)`, and the prenex variant has prefix
//! `∃^{k+c₁}∀^{c₂}∃^{c₃}∀^{c₄}` with machine-independent `c₁..c₄`.

use super::machine::{Action, Symbol, TuringMachine};
use crate::error::{Error, Result};
use crate::formula::{
    alternation_number, graph_axioms, prefix_pattern, quantifier_rank, to_prenex, Formula, Quant,
    Var,
};

/// The designated free variables of the body `B_M`.
#[derive(Debug, Clone)]
pub struct DesignatedVars {
    pub x: Var,
    pub x_prime: Var,
    pub t: Var,
    pub t_prime: Var,
    pub z: Var,
    pub states: Vec<Var>,
    pub sym_a: Var,
    pub sym_b: Var,
    pub sym_blank: Var,
    pub sym_left: Var,
    pub head: Var,
}

impl DesignatedVars {
    fn new(k: usize) -> DesignatedVars {
        DesignatedVars {
            x: Var(0),
            x_prime: Var(1),
            t: Var(2),
            t_prime: Var(3),
            z: Var(4),
            states: (0..k).map(|i| Var(5 + i as u32)).collect(),
            sym_a: Var(5 + k as u32),
            sym_b: Var(6 + k as u32),
            sym_blank: Var(7 + k as u32),
            sym_left: Var(8 + k as u32),
            head: Var(9 + k as u32),
        }
    }

    pub fn all(&self) -> Vec<Var> {
        let mut out = vec![self.x, self.x_prime, self.t, self.t_prime, self.z];
        out.extend(&self.states);
        out.extend([
            self.sym_a,
            self.sym_b,
            self.sym_blank,
            self.sym_left,
            self.head,
        ]);
        out
    }

    pub fn symbol_var(&self, s: Symbol) -> Var {
        match s {
            Symbol::A => self.sym_a,
            Symbol::B => self.sym_b,
            Symbol::Blank => self.sym_blank,
            Symbol::L => self.sym_left,
        }
    }
}

/// A compiled sentence with its pieces exposed for evaluation and tests.
#[derive(Debug, Clone)]
pub struct CompiledSentence {
    pub machine_states: usize,
    /// The full sentence: graph axioms ∧ ∃-block over the body.
    pub sentence: Formula,
    /// The existential part alone: `∃ designated (B_M)`.
    pub existential: Formula,
    /// The body `B_M` with the designated variables free.
    pub body: Formula,
    pub vars: DesignatedVars,
}

struct Builder {
    d: DesignatedVars,
    next: u32,
}

impl Builder {
    fn new(k: usize) -> Builder {
        Builder {
            d: DesignatedVars::new(k),
            next: (k + 10) as u32,
        }
    }

    fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    /// `∃v(guards ∧ body)`, the adjacency guard first for range narrowing.
    fn ex(&self, v: Var, mut guards: Vec<Formula>, body: Formula) -> Formula {
        guards.push(body);
        Formula::exists(v, Formula::and(guards))
    }

    /// `∀v(guards → body)` as `∀v(¬g₁ ∨ … ∨ body)`.
    fn fa(&self, v: Var, guards: Vec<Formula>, body: Formula) -> Formula {
        let mut parts: Vec<Formula> = guards.into_iter().map(Formula::not).collect();
        parts.push(body);
        Formula::forall(v, Formula::or(parts))
    }

    fn adj(&self, u: Var, v: Var) -> Formula {
        Formula::adj(u, v)
    }

    /// `u ≤ v` in the ladder with column set `N(col)`: every column of u is a
    /// column of v. Purely universal.
    fn le(&mut self, u: Var, v: Var, col: Var) -> Formula {
        let c = self.fresh();
        self.fa(
            c,
            vec![self.adj(c, col), self.adj(u, c)],
            self.adj(v, c),
        )
    }

    /// Least element of the ladder with member set `N(set)`.
    fn least(&mut self, u: Var, set: Var, col: Var) -> Formula {
        let w = self.fresh();
        let le = self.le(u, w, col);
        Formula::and(vec![
            self.adj(u, set),
            self.fa(w, vec![self.adj(w, set)], le),
        ])
    }

    /// Greatest element of the ladder.
    fn greatest(&mut self, u: Var, set: Var, col: Var) -> Formula {
        let w = self.fresh();
        let le = self.le(w, u, col);
        Formula::and(vec![
            self.adj(u, set),
            self.fa(w, vec![self.adj(w, set)], le),
        ])
    }

    /// `v` is the immediate successor of `u` in the ladder: `u ≤ v` and
    /// exactly one column separates them. Every nested-quantifier sequence is
    /// alternation-free in both polarities.
    fn cover(&mut self, u: Var, v: Var, col: Var) -> Formula {
        let le = self.le(u, v, col);
        let c = self.fresh();
        let sep = |b: &Builder, c: Var| {
            vec![
                b.adj(c, col),
                b.adj(v, c),
                Formula::not(b.adj(u, c)),
            ]
        };
        let exists_sep = self.ex(c, sep(self, c), Formula::eq(c, c));
        let c1 = self.fresh();
        let c2 = self.fresh();
        let mut inner_guards = sep(self, c2);
        let unique_inner = self.fa(c2, inner_guards.drain(..).collect(), Formula::eq(c1, c2));
        let unique = self.fa(c1, sep(self, c1), unique_inner);
        Formula::and(vec![le, exists_sep, unique])
    }

    /// `w` is the grid vertex with coordinates `(u, v)`.
    fn pair_guards(&self, w: Var, u: Var, v: Var) -> Vec<Formula> {
        vec![self.adj(w, self.d.z), self.adj(w, u), self.adj(w, v)]
    }

    /// Exactly one of the adjacencies `w ∼ targets[i]` holds.
    fn exactly_one_adj(&self, w: Var, targets: &[Var]) -> Formula {
        let mut parts = vec![Formula::or(
            targets.iter().map(|&s| self.adj(w, s)).collect(),
        )];
        for i in 0..targets.len() {
            for j in i + 1..targets.len() {
                parts.push(Formula::not(Formula::and(vec![
                    self.adj(w, targets[i]),
                    self.adj(w, targets[j]),
                ])));
            }
        }
        Formula::and(parts)
    }

    /// `∃!v(guards)`: existence plus uniqueness, expanded.
    fn exactly_one(&mut self, v: Var, guards: Vec<Formula>) -> Formula {
        let exists = self.ex(v, guards.clone(), Formula::eq(v, v));
        let v2 = self.fresh();
        let guards2: Vec<Formula> = guards
            .iter()
            .map(|g| rename_var(g, v, v2))
            .collect();
        let inner = self.fa(v2, guards2, Formula::eq(v, v2));
        let unique = self.fa(v, guards, inner);
        Formula::and(vec![exists, unique])
    }

    /// The ordering gadget P(m, m') over the sets `M = N(m)`, `M' = N(m')`.
    /// Quantifier rank 4, alternation number 2.
    fn p_gadget(&mut self, m: Var, mp: Var) -> Formula {
        let mut parts = Vec::new();
        // (P1) {m, m'}, M, M' disjoint, M and M' independent
        parts.push(Formula::not(Formula::eq(m, mp)));
        parts.push(Formula::not(self.adj(m, mp)));
        let y = self.fresh();
        parts.push(Formula::forall(
            y,
            Formula::not(Formula::and(vec![self.adj(y, m), self.adj(y, mp)])),
        ));
        for set in [m, mp] {
            let y1 = self.fresh();
            let y2 = self.fresh();
            let inner = self.fa(
                y2,
                vec![self.adj(y2, set)],
                Formula::not(self.adj(y1, y2)),
            );
            parts.push(self.fa(y1, vec![self.adj(y1, set)], inner));
        }
        // (P2) every row has some column
        let y = self.fresh();
        let zc = self.fresh();
        let p2_inner = self.ex(zc, vec![self.adj(zc, mp), self.adj(y, zc)], Formula::eq(zc, zc));
        parts.push(self.fa(y, vec![self.adj(y, m)], p2_inner));
        // (P3) some row has exactly one column
        let y = self.fresh();
        let zc = self.fresh();
        let one = self.exactly_one(zc, vec![self.adj(zc, mp), self.adj(y, zc)]);
        parts.push(self.ex(y, vec![self.adj(y, m)], one));
        // (P4) some row has every column
        let y = self.fresh();
        let zc = self.fresh();
        let all = self.fa(zc, vec![self.adj(zc, mp)], self.adj(y, zc));
        parts.push(self.ex(y, vec![self.adj(y, m)], all));
        // (P5) rows are nested
        let y1 = self.fresh();
        let y2 = self.fresh();
        let le12 = self.le(y1, y2, mp);
        let le21 = self.le(y2, y1, mp);
        let inner = self.fa(
            y2,
            vec![self.adj(y2, m)],
            Formula::or(vec![le12, le21]),
        );
        parts.push(self.fa(y1, vec![self.adj(y1, m)], inner));
        // (P6) distinct rows differ in some column
        let y1 = self.fresh();
        let y2 = self.fresh();
        let zc = self.fresh();
        let differs = self.ex(
            zc,
            vec![self.adj(zc, mp)],
            Formula::and(vec![
                Formula::or(vec![
                    Formula::not(self.adj(y1, zc)),
                    Formula::not(self.adj(y2, zc)),
                ]),
                Formula::or(vec![self.adj(y1, zc), self.adj(y2, zc)]),
            ]),
        );
        let inner = self.fa(
            y2,
            vec![self.adj(y2, m), Formula::not(Formula::eq(y1, y2))],
            differs,
        );
        parts.push(self.fa(y1, vec![self.adj(y1, m)], inner));
        // (P7) a row missing some column has a successor row: one with
        // exactly one column this row lacks
        let y = self.fresh();
        let zc = self.fresh();
        let missing = self.ex(
            zc,
            vec![self.adj(zc, mp), Formula::not(self.adj(y, zc))],
            Formula::eq(zc, zc),
        );
        let yp = self.fresh();
        let zc2 = self.fresh();
        let succ_unique = self.exactly_one(
            zc2,
            vec![
                self.adj(zc2, mp),
                self.adj(yp, zc2),
                Formula::not(self.adj(y, zc2)),
            ],
        );
        let has_succ = self.ex(yp, vec![self.adj(yp, m)], succ_unique);
        parts.push(self.fa(
            y,
            vec![self.adj(y, m)],
            Formula::or(vec![Formula::not(missing), has_succ]),
        ));
        // (P8) a row is the least or has a predecessor: one lacking exactly
        // one of this row's columns
        let y = self.fresh();
        let zc = self.fresh();
        let only_one = self.exactly_one(zc, vec![self.adj(zc, mp), self.adj(y, zc)]);
        let ym = self.fresh();
        let zc2 = self.fresh();
        let pred_unique = self.exactly_one(
            zc2,
            vec![
                self.adj(zc2, mp),
                self.adj(y, zc2),
                Formula::not(self.adj(ym, zc2)),
            ],
        );
        let has_pred = self.ex(ym, vec![self.adj(ym, m)], pred_unique);
        parts.push(self.fa(y, vec![self.adj(y, m)], Formula::or(vec![only_one, has_pred])));
        Formula::and(parts)
    }

    /// The coordinatization COOR(x, x', t, t', z). `extra_z_neighbors` names
    /// designated vertices that cell vertices may additionally touch (the
    /// symbol and head markers inside the full sentence; empty standalone).
    fn coor(&mut self, extra_z_neighbors: &[Var]) -> Formula {
        let (x, xp, t, tp, z) = (self.d.x, self.d.x_prime, self.d.t, self.d.t_prime, self.d.z);
        let five = [x, xp, t, tp, z];
        let mut parts = Vec::new();
        // (C1) designated vertices distinct and non-adjacent
        for i in 0..5 {
            for j in i + 1..5 {
                parts.push(Formula::not(Formula::eq(five[i], five[j])));
                parts.push(Formula::not(self.adj(five[i], five[j])));
            }
        }
        // neighborhoods pairwise disjoint
        for i in 0..5 {
            for j in i + 1..5 {
                let y = self.fresh();
                parts.push(Formula::forall(
                    y,
                    Formula::not(Formula::and(vec![
                        self.adj(y, five[i]),
                        self.adj(y, five[j]),
                    ])),
                ));
            }
        }
        // Z independent
        let y1 = self.fresh();
        let y2 = self.fresh();
        let inner = self.fa(y2, vec![self.adj(y2, z)], Formula::not(self.adj(y1, y2)));
        parts.push(self.fa(y1, vec![self.adj(y1, z)], inner));
        // neighbors of Z lie in {z} ∪ X ∪ T (∪ extras)
        let u = self.fresh();
        let v = self.fresh();
        let mut allowed = vec![
            Formula::eq(v, z),
            self.adj(v, x),
            self.adj(v, t),
        ];
        allowed.extend(extra_z_neighbors.iter().map(|&e| Formula::eq(v, e)));
        let inner = self.fa(v, vec![self.adj(v, u)], Formula::or(allowed));
        parts.push(self.fa(u, vec![self.adj(u, z)], inner));
        // no edge between X ∪ X' and T ∪ T'
        let u = self.fresh();
        let v = self.fresh();
        let inner = self.fa(
            v,
            vec![Formula::or(vec![self.adj(v, t), self.adj(v, tp)])],
            Formula::not(self.adj(u, v)),
        );
        parts.push(self.fa(
            u,
            vec![Formula::or(vec![self.adj(u, x), self.adj(u, xp)])],
            inner,
        ));
        // (C2) the two ladders
        parts.push(self.p_gadget(x, xp));
        parts.push(self.p_gadget(t, tp));
        // (C3) every grid vertex has unique coordinates
        let w = self.fresh();
        let cx = self.fresh();
        let ct = self.fresh();
        let ux = self.exactly_one(cx, vec![self.adj(cx, x), self.adj(w, cx)]);
        let ut = self.exactly_one(ct, vec![self.adj(ct, t), self.adj(w, ct)]);
        parts.push(self.fa(w, vec![self.adj(w, z)], Formula::and(vec![ux, ut])));
        // (C4) every coordinate pair has a unique grid vertex
        let u = self.fresh();
        let v = self.fresh();
        let w = self.fresh();
        let mut guards = self.pair_guards(w, u, v);
        guards.rotate_left(0);
        let uw = self.exactly_one(w, guards);
        let inner = self.fa(v, vec![self.adj(v, t)], uw);
        parts.push(self.fa(u, vec![self.adj(u, x)], inner));
        Formula::and(parts)
    }

    // ---- derived-symbol helpers ----

    /// The symbol of the grid vertex `(u, v)` is `sym`.
    fn val_is(&mut self, u: Var, v: Var, sym: Var) -> Formula {
        let w = self.fresh();
        let mut guards = self.pair_guards(w, u, v);
        guards.push(self.adj(w, sym));
        self.ex(w, guards, Formula::eq(w, w))
    }

    /// The head sits on cell `u` at time `v`.
    fn head_at(&mut self, u: Var, v: Var) -> Formula {
        let w = self.fresh();
        let mut guards = self.pair_guards(w, u, v);
        guards.push(self.adj(w, self.d.head));
        self.ex(w, guards, Formula::eq(w, w))
    }

    /// The head cell at time `v` carries symbol `sym` (head-position value).
    fn head_val_is(&mut self, v: Var, sym: Var) -> Formula {
        let w = self.fresh();
        self.ex(
            w,
            vec![
                self.adj(w, self.d.z),
                self.adj(w, v),
                self.adj(w, self.d.head),
                self.adj(w, sym),
            ],
            Formula::eq(w, w),
        )
    }
}

fn rename_var(f: &Formula, from: Var, to: Var) -> Formula {
    f.rename_free(from, to)
}

fn conjunct_a1(b: &mut Builder) -> Formula {
    let all = b.d.all();
    let mut parts = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            parts.push(Formula::not(Formula::eq(all[i], all[j])));
        }
    }
    // no designated vertex lies in X, X', T, T' or Z
    for &setter in &[b.d.x, b.d.x_prime, b.d.t, b.d.t_prime, b.d.z] {
        for &u in &all {
            if u != setter {
                parts.push(Formula::not(b.adj(u, setter)));
            }
        }
    }
    // every vertex is designated or in one of the five neighborhoods
    let u = b.fresh();
    let mut cover: Vec<Formula> = all.iter().map(|&v| Formula::eq(u, v)).collect();
    for &setter in &[b.d.x, b.d.x_prime, b.d.t, b.d.t_prime, b.d.z] {
        cover.push(b.adj(u, setter));
    }
    parts.push(Formula::forall(u, Formula::or(cover)));
    Formula::and(parts)
}

fn conjunct_a3(b: &mut Builder) -> Formula {
    let mut parts = Vec::new();
    for sym in [b.d.sym_a, b.d.sym_b, b.d.sym_blank, b.d.sym_left] {
        let u = b.fresh();
        parts.push(b.fa(u, vec![b.adj(u, sym)], b.adj(u, b.d.z)));
    }
    Formula::and(parts)
}

fn conjunct_a4(b: &mut Builder) -> Formula {
    let u = b.fresh();
    let v = b.fresh();
    let w = b.fresh();
    let symbols = [b.d.sym_a, b.d.sym_b, b.d.sym_blank, b.d.sym_left];
    let one = b.exactly_one_adj(w, &symbols);
    let guards = b.pair_guards(w, u, v);
    let inner_w = b.fa(w, guards, one);
    let inner_v = b.fa(v, vec![b.adj(v, b.d.t)], inner_w);
    b.fa(u, vec![b.adj(u, b.d.x)], inner_v)
}

fn conjunct_a5(b: &mut Builder) -> Formula {
    let u = b.fresh();
    let neighbors_in_z = b.fa(u, vec![b.adj(u, b.d.head)], b.adj(u, b.d.z));
    let v = b.fresh();
    let c = b.fresh();
    let head_here = b.head_at(c, v);
    let unique = b.exactly_one(c, vec![b.adj(c, b.d.x), head_here]);
    let per_time = b.fa(v, vec![b.adj(v, b.d.t)], unique);
    Formula::and(vec![neighbors_in_z, per_time])
}

fn conjunct_a6(b: &mut Builder) -> Formula {
    let mut parts = Vec::new();
    let states = b.d.states.clone();
    for &s in &states {
        let u = b.fresh();
        parts.push(b.fa(u, vec![b.adj(u, s)], b.adj(u, b.d.t)));
    }
    let v = b.fresh();
    let one = b.exactly_one_adj(v, &states);
    parts.push(b.fa(v, vec![b.adj(v, b.d.t)], one));
    Formula::and(parts)
}

fn conjunct_a7(b: &mut Builder) -> Formula {
    let d = b.d.clone();
    let mut parts = Vec::new();
    // VAL(1, 0) = L
    let p = b.fresh();
    let q = b.fresh();
    let w = b.fresh();
    let least_x = b.least(p, d.x, d.x_prime);
    let least_t = b.least(q, d.t, d.t_prime);
    let guards = b.pair_guards(w, p, q);
    let inner_w = b.fa(w, guards, b.adj(w, d.sym_left));
    let inner_q = b.fa(q, vec![least_t], inner_w);
    parts.push(b.fa(p, vec![least_x], inner_q));
    // every other cell is blank at time 0
    let u = b.fresh();
    let q = b.fresh();
    let w = b.fresh();
    let least_x_u = b.least(u, d.x, d.x_prime);
    let least_t = b.least(q, d.t, d.t_prime);
    let guards = b.pair_guards(w, u, q);
    let blank = b.fa(w, guards, b.adj(w, d.sym_blank));
    let inner_q = b.fa(q, vec![least_t], blank);
    parts.push(b.fa(
        u,
        vec![b.adj(u, d.x)],
        Formula::or(vec![least_x_u, inner_q]),
    ));
    // HP(0) = 2: the head cell at time 0 covers the least cell
    let q = b.fresh();
    let u = b.fresh();
    let least_t = b.least(q, d.t, d.t_prime);
    let head_here = b.head_at(u, q);
    let p = b.fresh();
    let least_x_p = b.least(p, d.x, d.x_prime);
    let covers = b.cover(p, u, d.x_prime);
    let second = b.fa(p, vec![b.adj(p, d.x), least_x_p], covers);
    let inner_u = b.fa(u, vec![b.adj(u, d.x), head_here], second);
    parts.push(b.fa(q, vec![least_t], inner_u));
    // ST(0) = s1
    let q = b.fresh();
    let least_t = b.least(q, d.t, d.t_prime);
    parts.push(b.fa(q, vec![least_t], b.adj(q, d.states[0])));
    Formula::and(parts)
}

fn conjunct_a8(b: &mut Builder) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let final_state = b.adj(v, *d.states.last().unwrap());
    let greatest_1 = b.greatest(v, d.t, d.t_prime);
    let greatest_2 = b.greatest(v, d.t, d.t_prime);
    let iff = Formula::and(vec![
        Formula::or(vec![Formula::not(final_state.clone()), greatest_1]),
        Formula::or(vec![Formula::not(greatest_2), final_state]),
    ]);
    b.fa(v, vec![b.adj(v, d.t)], iff)
}

fn conjunct_a9(b: &mut Builder) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let u = b.fresh();
    let greatest_t = b.greatest(v, d.t, d.t_prime);
    let head_here = b.head_at(u, v);
    // the symbol at (u, v) persists to (u, v⁺)
    let w = b.fresh();
    let mut sym_cases = Vec::new();
    for sym in [d.sym_a, d.sym_b, d.sym_blank, d.sym_left] {
        let v2 = b.fresh();
        let w2 = b.fresh();
        let cover_t = b.cover(v, v2, d.t_prime);
        let mut guards2 = b.pair_guards(w2, u, v2);
        guards2.push(b.adj(w2, sym));
        let next_has = b.ex(w2, guards2, Formula::eq(w2, w2));
        let at_next = b.ex(v2, vec![b.adj(v2, d.t), cover_t], next_has);
        sym_cases.push(Formula::and(vec![b.adj(w, sym), at_next]));
    }
    let guards_w = b.pair_guards(w, u, v);
    let persists = b.ex(w, guards_w, Formula::or(sym_cases));
    let inner_u = b.fa(
        u,
        vec![b.adj(u, d.x), Formula::not(head_here)],
        persists,
    );
    b.fa(
        v,
        vec![b.adj(v, d.t), Formula::not(greatest_t)],
        inner_u,
    )
}

fn conjunct_a10(b: &mut Builder) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let u = b.fresh();
    let w = b.fresh();
    let greatest_x = b.greatest(u, d.x, d.x_prime);
    let mut guards = b.pair_guards(w, u, v);
    guards.push(Formula::not(b.adj(w, d.sym_blank)));
    let nonblank = b.ex(w, guards, Formula::eq(w, w));
    let inner_u = b.ex(u, vec![b.adj(u, d.x), greatest_x], nonblank);
    b.ex(v, vec![b.adj(v, d.t)], inner_u)
}

/// (A11) for one right-moving instruction: the machine is never pushed off
/// the rightmost cell.
fn conjunct_a11(b: &mut Builder, state: usize, read: Symbol) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let head_val = b.head_val_is(v, d.symbol_var(read));
    let u = b.fresh();
    let greatest_x = b.greatest(u, d.x, d.x_prime);
    let head_here = b.head_at(u, v);
    let at_edge = b.ex(u, vec![b.adj(u, d.x), greatest_x], head_here);
    Formula::not(b.ex(
        v,
        vec![
            b.adj(v, d.t),
            b.adj(v, d.states[state - 1]),
            head_val,
        ],
        at_edge,
    ))
}

/// Common guard of the transition conjuncts: time v, head cell u, state s_i
/// reading `read` there.
fn transition_guards(b: &mut Builder, v: Var, u: Var, state: usize, read: Symbol) -> Vec<Formula> {
    let d = b.d.clone();
    let head_here = b.head_at(u, v);
    let val_here = b.val_is(u, v, d.symbol_var(read));
    vec![
        b.adj(v, d.t),
        b.adj(v, d.states[state - 1]),
        b.adj(u, d.x),
        head_here,
        val_here,
    ]
}

/// Next-time payload pieces shared by the transition conjuncts.
fn next_state_at(b: &mut Builder, v2: Var, next: usize) -> Formula {
    b.adj(v2, b.d.states[next - 1])
}

/// (A12): write instructions keep the head and set the written symbol.
fn conjunct_a12(b: &mut Builder, state: usize, read: Symbol, write: Symbol, next: usize) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let u = b.fresh();
    let guards = transition_guards(b, v, u, state, read);
    let v2 = b.fresh();
    let cover_t = b.cover(v, v2, d.t_prime);
    let w2 = b.fresh();
    let mut pg = b.pair_guards(w2, u, v2);
    pg.push(b.adj(w2, d.symbol_var(write)));
    pg.push(b.adj(w2, d.head));
    let cell_next = b.ex(w2, pg, Formula::eq(w2, w2));
    let payload = b.ex(
        v2,
        vec![b.adj(v2, d.t), cover_t, next_state_at(b, v2, next)],
        cell_next,
    );
    let inner = b.fa(u, guards[2..].to_vec(), payload);
    b.fa(v, guards[..2].to_vec(), inner)
}

/// (A13)/(A14): moving instructions shift the head and keep the symbol.
fn conjunct_move(
    b: &mut Builder,
    state: usize,
    read: Symbol,
    next: usize,
    to_right: bool,
) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let u = b.fresh();
    let guards = transition_guards(b, v, u, state, read);
    let v2 = b.fresh();
    let cover_t = b.cover(v, v2, d.t_prime);
    let u2 = b.fresh();
    let cover_x = if to_right {
        b.cover(u, u2, d.x_prime)
    } else {
        b.cover(u2, u, d.x_prime)
    };
    let w2 = b.fresh();
    let mut keep = b.pair_guards(w2, u, v2);
    keep.push(b.adj(w2, d.symbol_var(read)));
    let keep_sym = b.ex(w2, keep, Formula::eq(w2, w2));
    let w3 = b.fresh();
    let mut head_guards = b.pair_guards(w3, u2, v2);
    head_guards.push(b.adj(w3, d.head));
    let head_moved = b.ex(w3, head_guards, Formula::eq(w3, w3));
    let at_new_cell = b.ex(
        u2,
        vec![b.adj(u2, d.x), cover_x],
        head_moved,
    );
    let payload = b.ex(
        v2,
        vec![b.adj(v2, d.t), cover_t, next_state_at(b, v2, next)],
        Formula::and(vec![keep_sym, at_new_cell]),
    );
    let inner = b.fa(u, guards[2..].to_vec(), payload);
    b.fa(v, guards[..2].to_vec(), inner)
}

fn body_conjuncts(b: &mut Builder, m: &TuringMachine, merged: bool) -> Vec<Formula> {
    let d = b.d.clone();
    let extras = [d.sym_a, d.sym_b, d.sym_blank, d.sym_left, d.head];
    let mut parts = vec![
        conjunct_a1(b),
        b.coor(&extras),
        conjunct_a3(b),
        conjunct_a4(b),
        conjunct_a5(b),
        conjunct_a6(b),
        conjunct_a7(b),
        conjunct_a8(b),
        conjunct_a9(b),
        conjunct_a10(b),
    ];
    if merged {
        parts.extend(merged_transitions(b, m));
    } else {
        for i in &m.instructions {
            match i.action {
                Action::Right => {
                    parts.push(conjunct_a11(b, i.state, i.read));
                    parts.push(conjunct_move(b, i.state, i.read, i.next, true));
                }
                Action::Left => parts.push(conjunct_move(b, i.state, i.read, i.next, false)),
                Action::Write(sym) => parts.push(conjunct_a12(b, i.state, i.read, sym, i.next)),
            }
        }
    }
    parts
}

/// Merged no-overflow and transition conjuncts with a machine-independent
/// quantifier count; the instruction table appears only as quantifier-free
/// disjunctions.
fn merged_transitions(b: &mut Builder, m: &TuringMachine) -> Vec<Formula> {
    let d = b.d.clone();
    let mut parts = Vec::new();
    let rights: Vec<_> = m
        .instructions
        .iter()
        .filter(|i| i.action == Action::Right)
        .collect();
    // merged (A11)
    if !rights.is_empty() {
        let v = b.fresh();
        let w0 = b.fresh();
        let rows = Formula::or(
            rights
                .iter()
                .map(|i| {
                    Formula::and(vec![
                        b.adj(v, d.states[i.state - 1]),
                        b.adj(w0, d.symbol_var(i.read)),
                    ])
                })
                .collect(),
        );
        let head_row = b.ex(
            w0,
            vec![
                b.adj(w0, d.z),
                b.adj(w0, v),
                b.adj(w0, d.head),
                rows,
            ],
            Formula::eq(w0, w0),
        );
        let u = b.fresh();
        let greatest_x = b.greatest(u, d.x, d.x_prime);
        let head_here = b.head_at(u, v);
        let at_edge = b.ex(u, vec![b.adj(u, d.x), greatest_x], head_here);
        parts.push(Formula::not(b.ex(
            v,
            vec![b.adj(v, d.t), head_row],
            at_edge,
        )));
    }
    // merged transitions, one conjunct per action kind
    for kind in [MergeKind::Write, MergeKind::Right, MergeKind::Left] {
        let instrs: Vec<_> = m
            .instructions
            .iter()
            .filter(|i| match kind {
                MergeKind::Write => matches!(i.action, Action::Write(_)),
                MergeKind::Right => i.action == Action::Right,
                MergeKind::Left => i.action == Action::Left,
            })
            .collect();
        if instrs.is_empty() {
            continue;
        }
        parts.push(merged_kind(b, &instrs, kind));
    }
    parts
}

#[derive(Clone, Copy, PartialEq)]
enum MergeKind {
    Write,
    Right,
    Left,
}

fn merged_kind(b: &mut Builder, instrs: &[&super::machine::Instruction], kind: MergeKind) -> Formula {
    let d = b.d.clone();
    let v = b.fresh();
    let u = b.fresh();
    // guard: head at (u, v) reading a symbol that selects one of the rows
    let w0 = b.fresh();
    let guard_rows = Formula::or(
        instrs
            .iter()
            .map(|i| {
                Formula::and(vec![
                    b.adj(v, d.states[i.state - 1]),
                    b.adj(w0, d.symbol_var(i.read)),
                ])
            })
            .collect(),
    );
    let mut guard_pair = b.pair_guards(w0, u, v);
    guard_pair.push(b.adj(w0, d.head));
    guard_pair.push(guard_rows);
    let guard = b.ex(w0, guard_pair, Formula::eq(w0, w0));

    let v2 = b.fresh();
    let cover_t = b.cover(v, v2, d.t_prime);
    let payload_inner = match kind {
        MergeKind::Write => {
            // rows fix the current symbol via w1 and the written one via w2
            let w1 = b.fresh();
            let w2 = b.fresh();
            let rows = Formula::or(
                instrs
                    .iter()
                    .map(|i| {
                        let written = match i.action {
                            Action::Write(s) => s,
                            _ => unreachable!(),
                        };
                        Formula::and(vec![
                            b.adj(v, d.states[i.state - 1]),
                            b.adj(w1, d.symbol_var(i.read)),
                            b.adj(w2, d.symbol_var(written)),
                            b.adj(v2, d.states[i.next - 1]),
                        ])
                    })
                    .collect(),
            );
            let mut g2 = b.pair_guards(w2, u, v2);
            g2.push(b.adj(w2, d.head));
            let inner_w2 = b.ex(w2, g2, rows);
            let mut g1 = b.pair_guards(w1, u, v);
            g1.push(b.adj(w1, d.head));
            b.ex(w1, g1, inner_w2)
        }
        MergeKind::Right | MergeKind::Left => {
            let u2 = b.fresh();
            let cover_x = if kind == MergeKind::Right {
                b.cover(u, u2, d.x_prime)
            } else {
                b.cover(u2, u, d.x_prime)
            };
            let w3 = b.fresh();
            let mut g3 = b.pair_guards(w3, u2, v2);
            g3.push(b.adj(w3, d.head));
            let head_moved = b.ex(w3, g3, Formula::eq(w3, w3));
            let w1 = b.fresh();
            let w2 = b.fresh();
            let rows = Formula::or(
                instrs
                    .iter()
                    .map(|i| {
                        Formula::and(vec![
                            b.adj(v, d.states[i.state - 1]),
                            b.adj(w1, d.symbol_var(i.read)),
                            b.adj(w2, d.symbol_var(i.read)),
                            b.adj(v2, d.states[i.next - 1]),
                        ])
                    })
                    .collect(),
            );
            let g2 = b.pair_guards(w2, u, v2);
            let inner_w2 = b.ex(w2, g2, rows);
            let mut g1 = b.pair_guards(w1, u, v);
            g1.push(b.adj(w1, d.head));
            let inner_w1 = b.ex(w1, g1, inner_w2);
            b.ex(u2, vec![b.adj(u2, d.x), cover_x], Formula::and(vec![head_moved, inner_w1]))
        }
    };
    let payload = b.ex(v2, vec![b.adj(v2, d.t), cover_t], payload_inner);
    let inner = b.fa(u, vec![b.adj(u, d.x), guard], payload);
    b.fa(v, vec![b.adj(v, d.t)], inner)
}

fn assemble(m: &TuringMachine, merged: bool) -> (CompiledSentence, Vec<Formula>) {
    let k = m.states;
    let mut b = Builder::new(k);
    let conjuncts = body_conjuncts(&mut b, m, merged);
    let body = Formula::and(conjuncts.clone());
    let mut existential = body.clone();
    for v in b.d.all().into_iter().rev() {
        existential = Formula::exists(v, existential);
    }
    let sentence = Formula::and(vec![graph_axioms(), existential.clone()]);
    (
        CompiledSentence {
            machine_states: k,
            sentence,
            existential,
            body,
            vars: b.d,
        },
        conjuncts,
    )
}

/// Compile a machine into the sentence `A_M`. The metric contracts —
/// quantifier rank exactly `k + 16`, alternation number exactly 3 — are
/// verified before returning.
pub fn compile(m: &TuringMachine) -> Result<CompiledSentence> {
    let (c, conjuncts) = assemble(m, false);
    let k = m.states as u32;
    for (i, conj) in conjuncts.iter().enumerate() {
        let qr = quantifier_rank(conj);
        let alt = alternation_number(conj);
        if qr > 6 || alt > 2 {
            return Err(Error::Internal(format!(
                "body conjunct {i} breaks the budget: qr {qr}, alt {alt}"
            )));
        }
    }
    let qr = quantifier_rank(&c.sentence);
    let alt = alternation_number(&c.sentence);
    if qr != k + 16 || alt != 3 {
        return Err(Error::Internal(format!(
            "sentence metrics off: qr {qr} (want {}), alt {alt} (want 3)",
            k + 16
        )));
    }
    Ok(c)
}

/// The quantifier prefix of a prenex formula, flattened.
pub fn prefix_of(f: &Formula) -> Vec<Quant> {
    let mut out = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Exists(_, g) => {
                out.push(Quant::Exists);
                cur = g;
            }
            Formula::Forall(_, g) => {
                out.push(Quant::Forall);
                cur = g;
            }
            _ => return out,
        }
    }
}

/// Compile to an equivalent prenex sentence with quantifier prefix
/// `∃^{k+c₁} ∀^{c₂} ∃^{c₃} ∀^{c₄}` for machine-independent `c₁..c₄`.
/// The merged transition conjuncts keep the quantifier count constant; the
/// instruction table only widens quantifier-free disjunctions.
pub fn compile_prenex(m: &TuringMachine) -> Result<Formula> {
    let (c, _) = assemble(m, true);
    let p = to_prenex(&c.sentence)?;
    let prefix = prefix_of(&p);
    let k = m.states;
    let leading = prefix.iter().take_while(|&&q| q == Quant::Exists).count();
    if leading < k {
        return Err(Error::Internal(format!(
            "prenex prefix starts with {leading} existentials, need at least {k}"
        )));
    }
    let blocks = prefix_pattern(&p)
        .map(|(_, b)| b)
        .unwrap_or_default();
    if blocks != 4 {
        return Err(Error::Internal(format!(
            "prenex prefix has {blocks} blocks, want 4 (3 alternations)"
        )));
    }
    Ok(p)
}

/// Block sizes `(c₁-part, c₂, c₃, c₄)` of the prenex prefix, with the first
/// component the full leading existential count `k + c₁`.
pub fn prefix_block_sizes(p: &Formula) -> Vec<usize> {
    let prefix = prefix_of(p);
    let mut sizes = Vec::new();
    let mut last: Option<Quant> = None;
    for q in prefix {
        if last == Some(q) {
            *sizes.last_mut().unwrap() += 1;
        } else {
            sizes.push(1);
            last = Some(q);
        }
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::super::machine::corpus_machine;
    use super::*;
    use crate::formula::{classify, length, PrefixClass};

    #[test]
    fn metrics_for_the_corpus() {
        for k in 2..=6 {
            let c = compile(&corpus_machine(k)).unwrap();
            assert_eq!(quantifier_rank(&c.sentence), k as u32 + 16, "k = {k}");
            assert_eq!(alternation_number(&c.sentence), 3, "k = {k}");
            assert!(classify(&c.sentence).contains(&PrefixClass::AltSetExists(3)));
        }
    }

    #[test]
    fn length_has_a_quadratic_envelope() {
        // measured on the corpus and frozen: |A_M| <= 260 * k^2
        for k in 2..=6 {
            let c = compile(&corpus_machine(k)).unwrap();
            let len = length(&c.sentence);
            assert!(
                len <= 260 * (k as u64) * (k as u64),
                "k = {k}: length {len}"
            );
        }
    }

    #[test]
    fn prenex_prefix_shape() {
        let mut tails: Vec<Vec<usize>> = Vec::new();
        for k in 2..=5 {
            let p = compile_prenex(&corpus_machine(k)).unwrap();
            let sizes = prefix_block_sizes(&p);
            assert_eq!(sizes.len(), 4, "k = {k}");
            assert!(sizes[0] >= k, "k = {k}: leading block {}", sizes[0]);
            tails.push(sizes[1..].to_vec());
        }
        // c2, c3, c4 do not depend on the machine
        for t in &tails[1..] {
            assert_eq!(t, &tails[0]);
        }
    }
}
