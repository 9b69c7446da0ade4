//! The tree-game Spoiler strategies, as deterministic move selectors that
//! can be played against an exhaustive Duplicator.
//!
//! Every strategy is a pure function of the position: composite strategies
//! re-derive their phase by replaying the recorded rounds.

use super::catalog::is_diverging;
use super::ranked::{base_quadruple, embeds_as_rooted_subtree};
use crate::efgame::{GamePair, Move, Position, Side, SpoilerStrategy};
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, RootedTree};

// ---------- shared toolkit ----------

fn bfs_restricted(g: &Graph, allowed: Option<&[bool]>, from: usize) -> Vec<Distance> {
    let ok = |v: usize| allowed.map_or(true, |a| a[v]);
    let mut dist = vec![Distance::Infinity; g.order()];
    if !ok(from) {
        return dist;
    }
    dist[from] = Distance::Finite(0);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].finite().unwrap();
        for v in g.neighbors(u) {
            if ok(v) && dist[v].is_infinite() {
                dist[v] = Distance::Finite(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn dist_restricted(g: &Graph, allowed: Option<&[bool]>, u: usize, v: usize) -> Distance {
    bfs_restricted(g, allowed, u)[v]
}

/// A rooted orientation of (part of) a tree graph, with subtree codes.
struct Rooting {
    root: usize,
    children: Vec<Vec<usize>>,
    member: Vec<bool>,
    code: Vec<Vec<u8>>,
    depth_below: Vec<usize>,
}

impl Rooting {
    fn build(g: &Graph, root: usize, allowed: Option<&[bool]>) -> Rooting {
        let n = g.order();
        let ok = |v: usize| allowed.map_or(true, |a| a[v]);
        let mut children = vec![Vec::new(); n];
        let mut member = vec![false; n];
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        member[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in g.neighbors(u) {
                if ok(v) && !member[v] && parent[u] != v {
                    member[v] = true;
                    parent[v] = u;
                    children[u].push(v);
                    queue.push_back(v);
                }
            }
        }
        let mut code = vec![Vec::new(); n];
        let mut depth_below = vec![0usize; n];
        for &u in order.iter().rev() {
            let mut cs: Vec<Vec<u8>> = children[u].iter().map(|&c| code[c].clone()).collect();
            cs.sort();
            let mut out = vec![b'('];
            for c in cs {
                out.extend(c);
            }
            out.push(b')');
            code[u] = out;
            depth_below[u] = children[u]
                .iter()
                .map(|&c| depth_below[c] + 1)
                .max()
                .unwrap_or(0);
        }
        Rooting {
            root,
            children,
            member,
            code,
            depth_below,
        }
    }

    fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().copied());
        }
        out.sort_unstable();
        out
    }

    fn subtree_rooted(&self, v: usize) -> RootedTree {
        let verts = self.subtree_vertices(v);
        let index = |u: usize| verts.binary_search(&u).unwrap();
        let mut parent: Vec<usize> = vec![0; verts.len()];
        parent[index(v)] = index(v);
        for &u in &verts {
            for &c in &self.children[u] {
                parent[index(c)] = index(u);
            }
        }
        RootedTree::new(parent, index(v)).expect("subtree is a tree")
    }

    /// Multiset of branch codes at `v`.
    fn branch_codes(&self, v: usize) -> Vec<&[u8]> {
        let mut out: Vec<&[u8]> = self.children[v].iter().map(|&c| self.code[c].as_slice()).collect();
        out.sort();
        out
    }

    /// Lowest child of `v` whose subtree code does not occur among the
    /// opponent's branch codes.
    fn fresh_child(&self, v: usize, opponent: &[&[u8]]) -> Option<usize> {
        self.children[v]
            .iter()
            .copied()
            .find(|&c| !opponent.contains(&self.code[c].as_slice()))
    }
}

/// The unique isomorphism between two isomorphic diverging rooted subtrees,
/// as a map from `a`-side vertices to `b`-side vertices.
fn diverging_iso(a: &Rooting, va: usize, b: &Rooting, vb: usize) -> Vec<(usize, usize)> {
    let mut map = vec![(va, vb)];
    let mut stack = vec![(va, vb)];
    while let Some((x, y)) = stack.pop() {
        let mut bys: Vec<usize> = b.children[y].clone();
        for &cx in &a.children[x] {
            let pos = bys
                .iter()
                .position(|&cy| b.code[cy] == a.code[cx])
                .expect("isomorphic diverging subtrees match branch for branch");
            let cy = bys.remove(pos);
            map.push((cx, cy));
            stack.push((cx, cy));
        }
    }
    map
}

fn centers_of(g: &Graph) -> Vec<usize> {
    g.metrics().centers
}

fn diameter_of(g: &Graph) -> Distance {
    g.metrics().diameter
}

/// Lexicographically first diametral geodesic of a connected subgraph.
fn diametral_path(g: &Graph, allowed: Option<&[bool]>) -> Vec<usize> {
    let n = g.order();
    let ok = |v: usize| allowed.map_or(true, |a| a[v]);
    let mut best: Option<(usize, usize, u32)> = None;
    for u in 0..n {
        if !ok(u) {
            continue;
        }
        let dist = bfs_restricted(g, allowed, u);
        for v in 0..n {
            if !ok(v) || u == v {
                continue;
            }
            if let Distance::Finite(d) = dist[v] {
                let better = match best {
                    None => true,
                    Some((bu, bv, bd)) => d > bd || (d == bd && (u, v) < (bu, bv)),
                };
                if better {
                    best = Some((u, v, d));
                }
            }
        }
    }
    let (u, v, _) = best.expect("connected part with at least two vertices");
    geodesic(g, allowed, u, v)
}

fn geodesic(g: &Graph, allowed: Option<&[bool]>, from: usize, to: usize) -> Vec<usize> {
    let dist = bfs_restricted(g, allowed, from);
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        let d = dist[cur].finite().expect("connected");
        let prev = g
            .neighbors(cur)
            .find(|&w| {
                allowed.map_or(true, |a| a[w]) && dist[w] == Distance::Finite(d - 1)
            })
            .expect("geodesic predecessor");
        path.push(prev);
        cur = prev;
    }
    path.reverse();
    path
}

/// Lexicographically first shortest cycle: remove each edge in order and
/// look for the shortest reconnection.
fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for (u, v) in g.edges() {
        let mut h = g.clone();
        h.remove_edge(u, v);
        if let Some(path) = h.shortest_path(u, v) {
            let better = match &best {
                None => true,
                Some(b) => path.len() < b.len(),
            };
            if better {
                best = Some(path);
            }
        }
    }
    best
}

fn side_vertices(pos: &Position, side: Side) -> &Vec<usize> {
    match side {
        Side::G => &pos.gu,
        Side::H => &pos.hv,
    }
}

/// Spoiler's pebble and the reply in a given round (setup pairs excluded).
fn round_pebbles(pos: &Position, round: usize) -> (usize, usize) {
    (pos.gu[pos.pre + round], pos.hv[pos.pre + round])
}

fn pebbled(pos: &Position, side: Side, v: usize) -> bool {
    side_vertices(pos, side).contains(&v)
}

// ---------- distance halving ----------

/// The halving strategy: with a pebbled pair at distance d on the playing
/// side and strictly larger on the other, repeatedly pebble the middle of a
/// shortest path, keeping a pair whose distances still differ. Wins within
/// ⌈log d⌉ extra moves.
pub struct DistanceStrategy {
    pub play_side: Side,
    /// Indices of the reference pebbles in the position.
    pub pebbles: (usize, usize),
    pub allowed_play: Option<Vec<bool>>,
    pub allowed_other: Option<Vec<bool>>,
    /// Rounds consumed by an enclosing strategy before this one starts.
    pub start_round: usize,
}

impl DistanceStrategy {
    fn active_pair(&self, pair: &GamePair, pos: &Position) -> (usize, usize) {
        let mut active = self.pebbles;
        for r in self.start_round..pos.rounds_played() {
            let idx = pos.pre + r;
            active = self.update(pair, pos, active, idx);
        }
        active
    }

    fn update(
        &self,
        pair: &GamePair,
        pos: &Position,
        active: (usize, usize),
        new_idx: usize,
    ) -> (usize, usize) {
        let (play, other) = self.boards(pair);
        let mine = side_vertices(pos, self.play_side);
        let theirs = side_vertices(pos, self.play_side.other());
        for a in [active.0, active.1] {
            let d_play = dist_restricted(play, self.allowed_play.as_deref(), mine[new_idx], mine[a]);
            let d_other =
                dist_restricted(other, self.allowed_other.as_deref(), theirs[new_idx], theirs[a]);
            if d_play < d_other {
                return (new_idx, a);
            }
        }
        active
    }

    fn boards<'a>(&self, pair: &GamePair<'a>) -> (&'a Graph, &'a Graph) {
        (
            pair.board(self.play_side),
            pair.board(self.play_side.other()),
        )
    }
}

impl SpoilerStrategy for DistanceStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        let (play, _) = self.boards(pair);
        let (i, j) = self.active_pair(pair, pos);
        let mine = side_vertices(pos, self.play_side);
        let (a, b) = (mine[i], mine[j]);
        let path = geodesic(play, self.allowed_play.as_deref(), a, b);
        let d = path.len() - 1;
        if d < 2 {
            return Err(Error::Precondition(
                "distance strategy needs an active pair at distance at least 2".into(),
            ));
        }
        let m = if d % 2 == 0 {
            path[d / 2]
        } else {
            path[(d - 1) / 2].min(path[(d + 1) / 2])
        };
        Ok((self.play_side, m))
    }
}

pub fn distance_strategy(play_side: Side, pebbles: (usize, usize)) -> DistanceStrategy {
    DistanceStrategy {
        play_side,
        pebbles,
        allowed_play: None,
        allowed_other: None,
        start_round: 0,
    }
}

// ---------- different diameters ----------

/// For boards of different diameters: pebble two far-apart vertices in the
/// larger-diameter board, then halve distances in the smaller one.
pub struct DiameterStrategy;

pub fn diameter_strategy() -> DiameterStrategy {
    DiameterStrategy
}

impl DiameterStrategy {
    fn sides(pair: &GamePair) -> Result<(Side, u32)> {
        let dg = diameter_of(pair.g);
        let dh = diameter_of(pair.h);
        if dg == dh {
            return Err(Error::Precondition(
                "diameter strategy needs different diameters".into(),
            ));
        }
        // the side with the smaller diameter is where halving happens
        let small = if dg < dh { Side::G } else { Side::H };
        let d_small = match dg.min(dh) {
            Distance::Finite(d) => d,
            Distance::Infinity => unreachable!("the smaller diameter is finite"),
        };
        Ok((small, d_small))
    }

    fn setup_pair(pair: &GamePair, small: Side, d_small: u32) -> (usize, usize) {
        let big = pair.board(small.other());
        let mut fallback: Option<(usize, usize)> = None;
        for u in 0..big.order() {
            let dist = big.bfs_distances(u);
            for v in 0..big.order() {
                if u == v {
                    continue;
                }
                match dist[v] {
                    Distance::Finite(d) if d == d_small + 1 => return (u, v),
                    Distance::Finite(d) if d > d_small && fallback.is_none() => {
                        fallback = Some((u, v))
                    }
                    Distance::Infinity if fallback.is_none() => fallback = Some((u, v)),
                    _ => {}
                }
            }
        }
        fallback.expect("the larger diameter exceeds the smaller")
    }
}

impl SpoilerStrategy for DiameterStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        let (small, d_small) = Self::sides(pair)?;
        let (a, b) = Self::setup_pair(pair, small, d_small);
        match pos.rounds_played() {
            0 => Ok((small.other(), a)),
            1 => Ok((small.other(), b)),
            _ => DistanceStrategy {
                play_side: small,
                pebbles: (pos.pre, pos.pre + 1),
                allowed_play: None,
                allowed_other: None,
                start_round: 2,
            }
            .choose(pair, pos),
        }
    }
}

// ---------- tree against connected non-tree ----------

/// Against a connected non-tree of matching diameter: pebble a cycle vertex
/// with its two cycle neighbors, then halve distances in the punctured
/// graph, never leaving the non-tree board.
pub struct CycleStrategy;

pub fn cycle_strategy() -> CycleStrategy {
    CycleStrategy
}

impl CycleStrategy {
    fn plan(pair: &GamePair) -> Result<(Side, Vec<usize>)> {
        let (tree_side, cyc) = if pair.g.is_tree() && !pair.h.is_tree() && pair.h.is_connected() {
            (Side::G, Side::H)
        } else if pair.h.is_tree() && !pair.g.is_tree() && pair.g.is_connected() {
            (Side::H, Side::G)
        } else {
            return Err(Error::Precondition(
                "cycle strategy needs a tree versus a connected non-tree".into(),
            ));
        };
        let cycle = shortest_cycle(pair.board(cyc)).expect("non-tree has a cycle");
        let d_tree = match diameter_of(pair.board(tree_side)) {
            Distance::Finite(d) => d as usize,
            Distance::Infinity => unreachable!("trees are connected"),
        };
        if cycle.len() > 2 * d_tree + 1 {
            return Err(Error::Precondition(format!(
                "shortest cycle has {} vertices, needs at most {}",
                cycle.len(),
                2 * d_tree + 1
            )));
        }
        Ok((cyc, cycle))
    }
}

impl SpoilerStrategy for CycleStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        let (cyc, cycle) = Self::plan(pair)?;
        // z' and its two neighbors on the cycle, lowest ids first
        let z = *cycle.iter().min().unwrap();
        let at = cycle.iter().position(|&v| v == z).unwrap();
        let mut nbrs = [
            cycle[(at + 1) % cycle.len()],
            cycle[(at + cycle.len() - 1) % cycle.len()],
        ];
        nbrs.sort_unstable();
        match pos.rounds_played() {
            0 => Ok((cyc, z)),
            1 => Ok((cyc, nbrs[0])),
            2 => Ok((cyc, nbrs[1])),
            _ => {
                // puncture both boards at the first-round pebbles
                let mut allowed_play = vec![true; pair.board(cyc).order()];
                allowed_play[side_vertices(pos, cyc)[pos.pre]] = false;
                let mut allowed_other = vec![true; pair.board(cyc.other()).order()];
                allowed_other[side_vertices(pos, cyc.other())[pos.pre]] = false;
                DistanceStrategy {
                    play_side: cyc,
                    pebbles: (pos.pre + 1, pos.pre + 2),
                    allowed_play: Some(allowed_play),
                    allowed_other: Some(allowed_other),
                    start_round: 3,
                }
                .choose(pair, pos)
            }
        }
    }
}

// ---------- a pebbled non-center against a center ----------

/// With the center of the playing board pebbled against a non-central
/// vertex (same even diameter), walk a diametral path through the center.
pub struct CenterStrategy {
    pub play_side: Side,
    /// Index of the pebbled center pair.
    pub anchor: usize,
    pub start_round: usize,
}

pub fn center_strategy(play_side: Side) -> CenterStrategy {
    CenterStrategy {
        play_side,
        anchor: 0,
        start_round: 0,
    }
}

impl SpoilerStrategy for CenterStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        let play = pair.board(self.play_side);
        let center = side_vertices(pos, self.play_side)[self.anchor];
        let path = diametral_path(play, None);
        if !path.contains(&center) {
            return Err(Error::Precondition(
                "center strategy needs the pebbled vertex on every diametral path".into(),
            ));
        }
        let next = path
            .iter()
            .copied()
            .find(|&v| !pebbled(pos, self.play_side, v))
            .ok_or_else(|| {
                Error::Precondition("diametral path exhausted without a win".into())
            })?;
        Ok((self.play_side, next))
    }
}

// ---------- diverging trees of equal diameter ----------

/// Distinguish two non-isomorphic diverging trees of equal diameter within
/// radius + 1 rounds: pebble the center, then descend along branches whose
/// subtree is missing on the other board.
pub struct DivergingStrategy;

pub fn diverging_strategy() -> DivergingStrategy {
    DivergingStrategy
}

/// Shared descend logic: from the anchored pair walk down, always picking a
/// child subtree missing among the opponent's branches, prolonging the path
/// when exactly one side bottoms out.
fn diverging_descend(
    pair: &GamePair,
    pos: &Position,
    roots: (usize, usize),
    start_round: usize,
) -> Result<Move> {
    let rg = Rooting::build(pair.g, pos.gu[roots.0], None);
    let rh = Rooting::build(pair.h, pos.hv[roots.1], None);
    // current pair: the pebbles of the last descend round
    let (mut cg, mut ch) = (pos.gu[roots.0], pos.hv[roots.1]);
    for r in start_round..pos.rounds_played() {
        let (a, b) = round_pebbles(pos, r);
        cg = a;
        ch = b;
    }
    let g_leaf = rg.children[cg].is_empty();
    let h_leaf = rh.children[ch].is_empty();
    match (g_leaf, h_leaf) {
        (true, false) => Ok((Side::H, rh.children[ch][0])),
        (false, true) => Ok((Side::G, rg.children[cg][0])),
        (true, true) => Err(Error::Precondition(
            "descend reached isomorphic leaves; the subtrees were not distinct".into(),
        )),
        (false, false) => {
            if let Some(c) = rg.fresh_child(cg, &rh.branch_codes(ch)) {
                Ok((Side::G, c))
            } else if let Some(c) = rh.fresh_child(ch, &rg.branch_codes(cg)) {
                Ok((Side::H, c))
            } else {
                Err(Error::Precondition(
                    "both branch code sets agree; the subtrees were not distinct".into(),
                ))
            }
        }
    }
}

impl SpoilerStrategy for DivergingStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        let centers_g = centers_of(pair.g);
        if pos.rounds_played() == 0 {
            return Ok((Side::G, centers_g[0]));
        }
        let reply = pos.hv[pos.pre];
        let centers_h = centers_of(pair.h);
        if centers_h.contains(&reply) {
            return diverging_descend(pair, pos, (pos.pre, pos.pre), 1);
        }
        // punish: a vertex beyond the radius from the reply, then halve in G
        if pos.rounds_played() == 1 {
            let r = match pair.h.metrics().radius {
                Distance::Finite(r) => r,
                Distance::Infinity => unreachable!("trees are connected"),
            };
            let dist = pair.h.bfs_distances(reply);
            let far = (0..pair.h.order())
                .find(|&v| dist[v] > Distance::Finite(r))
                .expect("a non-central vertex sees beyond the radius");
            return Ok((Side::H, far));
        }
        DistanceStrategy {
            play_side: Side::G,
            pebbles: (pos.pre, pos.pre + 1),
            allowed_play: None,
            allowed_other: None,
            start_round: 2,
        }
        .choose(pair, pos)
    }
}

// ---------- diverging against non-diverging ----------

/// Distinguish a diverging tree (board G) from a non-diverging tree of the
/// same diameter within radius + 2 rounds.
pub struct DivergenceBreakStrategy;

pub fn divergence_break_strategy() -> DivergenceBreakStrategy {
    DivergenceBreakStrategy
}

impl DivergenceBreakStrategy {
    /// The path Spoiler intends to pebble on H: center to the shallowest
    /// non-diverging vertex, then into one of its two equal branches.
    fn intended_path(pair: &GamePair) -> Result<(Vec<usize>, usize, usize)> {
        let center_h = centers_of(pair.h)[0];
        let rh = Rooting::build(pair.h, center_h, None);
        // the lowest-depth vertex whose subtree is not diverging while every
        // child subtree is
        let mut target: Option<(usize, usize)> = None; // (depth, vertex)
        let mut dist = vec![0usize; pair.h.order()];
        let mut stack = vec![center_h];
        let mut order = Vec::new();
        while let Some(u) = stack.pop() {
            order.push(u);
            for &c in &rh.children[u] {
                dist[c] = dist[u] + 1;
                stack.push(c);
            }
        }
        for &u in &order {
            let self_div = is_diverging(&rh.subtree_rooted(u));
            let children_div = rh
                .children[u]
                .iter()
                .all(|&c| is_diverging(&rh.subtree_rooted(c)));
            if !self_div && children_div {
                let better = target.map_or(true, |(d, v)| (dist[u], u) < (d, v));
                if better {
                    target = Some((dist[u], u));
                }
            }
        }
        let (_, y) = target.ok_or_else(|| {
            Error::Precondition("divergence-break needs a non-diverging opponent".into())
        })?;
        // two children with equal codes, lowest pair
        let mut z1z2: Option<(usize, usize)> = None;
        for (i, &c1) in rh.children[y].iter().enumerate() {
            for &c2 in rh.children[y].iter().skip(i + 1) {
                if rh.code[c1] == rh.code[c2] {
                    z1z2 = Some((c1.min(c2), c1.max(c2)));
                    break;
                }
            }
            if z1z2.is_some() {
                break;
            }
        }
        let (z1, z2) = z1z2.expect("a minimal non-diverging vertex has equal branches");
        let mut path = geodesic(pair.h, None, center_h, y);
        path.push(z1);
        Ok((path, z1, z2))
    }
}

impl SpoilerStrategy for DivergenceBreakStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        if !(is_diverging_graph(pair.g)? && !is_diverging_graph(pair.h)?) {
            return Err(Error::Precondition(
                "divergence-break needs a diverging G and non-diverging H".into(),
            ));
        }
        let (path, _z1, z2) = Self::intended_path(pair)?;
        if pos.rounds_played() == 0 {
            return Ok((Side::H, path[0]));
        }
        // punish a non-central reply by stretching distances
        let reply = pos.gu[pos.pre];
        if !centers_of(pair.g).contains(&reply) {
            if pos.rounds_played() == 1 {
                let r = match pair.g.metrics().radius {
                    Distance::Finite(r) => r,
                    Distance::Infinity => unreachable!(),
                };
                let dist = pair.g.bfs_distances(reply);
                let far = (0..pair.g.order())
                    .find(|&v| dist[v] > Distance::Finite(r))
                    .expect("non-central vertices see beyond the radius");
                return Ok((Side::G, far));
            }
            return DistanceStrategy {
                play_side: Side::H,
                pebbles: (pos.pre, pos.pre + 1),
                allowed_play: None,
                allowed_other: None,
                start_round: 2,
            }
            .choose(pair, pos);
        }
        // follow the intended path on H
        let follow = pos.rounds_played();
        if follow < path.len() {
            return Ok((Side::H, path[follow]));
        }
        let path_rounds = path.len(); // rounds 1..=path.len()-1 walked it; round path.len()-1+1? derive below
        let _ = path_rounds;
        // path fully pebbled after rounds 1..path.len(); reply to the last
        // path vertex:
        let z_round = path.len() - 1; // round index where z1 was pebbled
        let z_reply = pos.gu[pos.pre + z_round];
        let center_g = reply;
        let rg = Rooting::build(pair.g, center_g, None);
        let rh = Rooting::build(pair.h, pos.hv[pos.pre], None);
        let z1 = path[path.len() - 1];
        let dg = rg.depth_below[z_reply];
        let dh = rh.depth_below[z1];
        if dg != dh {
            // prolong the deeper side along a deepest chain
            let (side, rooting, mut at): (Side, &Rooting, usize) = if dg > dh {
                (Side::G, &rg, z_reply)
            } else {
                (Side::H, &rh, z1)
            };
            loop {
                let next = rooting.children[at]
                    .iter()
                    .copied()
                    .filter(|&c| rooting.depth_below[c] + 1 == rooting.depth_below[at])
                    .min();
                match next {
                    Some(c) if !pebbled(pos, side, c) => return Ok((side, c)),
                    Some(c) => at = c,
                    None => {
                        return Err(Error::Precondition(
                            "prolonged path exhausted without a win".into(),
                        ))
                    }
                }
            }
        }
        if rg.code[z_reply] != rh.code[z1] {
            return diverging_descend_at(pair, pos, (center_g, pos.hv[pos.pre]), z_round);
        }
        // isomorphic: switch to the twin branch
        if pos.rounds_played() == path.len() {
            return Ok((Side::H, z2));
        }
        diverging_descend_at(pair, pos, (center_g, pos.hv[pos.pre]), path.len())
    }
}

/// Descend with explicit root vertices (instead of pebble indices).
fn diverging_descend_at(
    pair: &GamePair,
    pos: &Position,
    roots: (usize, usize),
    start_round: usize,
) -> Result<Move> {
    let rg = Rooting::build(pair.g, roots.0, None);
    let rh = Rooting::build(pair.h, roots.1, None);
    let (a, b) = round_pebbles(pos, start_round);
    let (mut cg, mut ch) = (a, b);
    for r in start_round + 1..pos.rounds_played() {
        let (a, b) = round_pebbles(pos, r);
        cg = a;
        ch = b;
    }
    descend_step(pair, pos, &rg, &rh, cg, ch)
}

fn descend_step(
    _pair: &GamePair,
    _pos: &Position,
    rg: &Rooting,
    rh: &Rooting,
    cg: usize,
    ch: usize,
) -> Result<Move> {
    let g_leaf = rg.children[cg].is_empty();
    let h_leaf = rh.children[ch].is_empty();
    match (g_leaf, h_leaf) {
        (true, false) => Ok((Side::H, rh.children[ch][0])),
        (false, true) => Ok((Side::G, rg.children[cg][0])),
        (true, true) => Err(Error::Precondition(
            "descend reached isomorphic leaves".into(),
        )),
        (false, false) => {
            if let Some(c) = rg.fresh_child(cg, &rh.branch_codes(ch)) {
                Ok((Side::G, c))
            } else if let Some(c) = rh.fresh_child(ch, &rg.branch_codes(cg)) {
                Ok((Side::H, c))
            } else {
                Err(Error::Precondition("branch code sets agree".into()))
            }
        }
    }
}

fn is_diverging_graph(g: &Graph) -> Result<bool> {
    super::catalog::is_diverging_tree(g)
}

// ---------- ranked-tree strategies ----------

/// Continuous play on ranked rooted trees with the roots pre-pebbled:
/// descend along a branch missing on the other side; at depth 4 pebble the
/// whole remaining subtree.
pub struct RankedContinuousStrategy {
    /// Side holding the tree Spoiler plays in.
    pub play_side: Side,
    /// Pebble index of the pre-pebbled root pair.
    pub anchor: usize,
    pub start_round: usize,
}

pub fn ranked_continuous_strategy() -> RankedContinuousStrategy {
    RankedContinuousStrategy {
        play_side: Side::G,
        anchor: 0,
        start_round: 0,
    }
}

/// The continuous descend-and-flood move, playing inside `play_side` only.
/// `allowed` optionally restricts the playing board to an embedded subtree.
fn ranked_continuous_move(
    pair: &GamePair,
    pos: &Position,
    play_side: Side,
    roots: (usize, usize),
    start_round: usize,
    allowed_play: Option<&[bool]>,
) -> Result<Move> {
    let play = pair.board(play_side);
    let opp = pair.board(play_side.other());
    let rp = Rooting::build(play, roots.0, allowed_play);
    let ro = Rooting::build(opp, roots.1, None);
    // replay: descend while the current playing subtree is deeper than 4
    let (mut cp, mut co) = roots;
    let mut r = start_round;
    while r < pos.rounds_played() {
        if rp.depth_below[cp] > 4 {
            let mine = side_vertices(pos, play_side)[pos.pre + r];
            let theirs = side_vertices(pos, play_side.other())[pos.pre + r];
            cp = mine;
            co = theirs;
        }
        // flood rounds do not move the anchor
        r += 1;
    }
    if rp.depth_below[cp] > 4 {
        let c = rp
            .fresh_child(cp, &ro.branch_codes(co))
            .ok_or_else(|| Error::Precondition("no missing branch to descend into".into()))?;
        return Ok((play_side, c));
    }
    // flood the rank-0 subtree in breadth-first order
    let rooted = rp.subtree_vertices(cp);
    let mut bfs = vec![cp];
    let mut i = 0;
    while i < bfs.len() {
        let u = bfs[i];
        i += 1;
        for &c in &rp.children[u] {
            bfs.push(c);
        }
    }
    debug_assert_eq!(bfs.len(), rooted.len());
    bfs.into_iter()
        .find(|&v| !pebbled(pos, play_side, v))
        .map(|v| (play_side, v))
        .ok_or_else(|| Error::Precondition("rank-0 subtree exhausted without a win".into()))
}

impl SpoilerStrategy for RankedContinuousStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        ranked_continuous_move(
            pair,
            pos,
            self.play_side,
            (
                side_vertices(pos, self.play_side)[self.anchor],
                side_vertices(pos, self.play_side.other())[self.anchor],
            ),
            self.start_round,
            None,
        )
    }
}

/// Whole-game strategy for two non-isomorphic ranked trees of the same
/// rank: pebble the center, then continuous descend, all inside board G.
pub struct RankedRootStrategy;

pub fn ranked_root_strategy() -> RankedRootStrategy {
    RankedRootStrategy
}

impl SpoilerStrategy for RankedRootStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        if pos.rounds_played() == 0 {
            return Ok((Side::G, centers_of(pair.g)[0]));
        }
        let reply = pos.hv[pos.pre];
        if !centers_of(pair.h).contains(&reply) {
            return CenterStrategy {
                play_side: Side::G,
                anchor: pos.pre,
                start_round: 1,
            }
            .choose(pair, pos);
        }
        ranked_continuous_move(
            pair,
            pos,
            Side::G,
            (pos.gu[pos.pre], reply),
            1,
            None,
        )
    }
}

// ---------- ranked tree against an arbitrary connected graph ----------

/// Ranked tree (on `ranked_side`) against a connected graph that is not
/// isomorphic to it: different diameters stretch a path, non-trees exhibit
/// a cycle, same-diameter trees are handled by the apex case analysis.
pub struct RankedVsConnectedStrategy {
    pub ranked_side: Side,
}

pub fn ranked_vs_tree_strategy(ranked_side: Side) -> RankedVsConnectedStrategy {
    RankedVsConnectedStrategy { ranked_side }
}

enum ConnectedCase {
    /// Walk a too-long induced path on the named side.
    StretchPath(Side, Vec<usize>),
    /// Walk a short cycle, or a too-long path on it, on the named side.
    WalkList(Side, Vec<usize>),
    /// Same-diameter tree: the apex analysis of the three-way case split.
    Apex(ApexCase),
}

enum ApexCase {
    /// An apex of the opponent embeds in no base tree: walk to it and grow a
    /// witness subtree. Payload: the apex vertex.
    Foreign(usize),
    /// Some opponent vertex strictly extends a ranked member's branch set:
    /// walk to it and exploit the duplicate branch. Payload: the vertex and
    /// the matched member's branch codes.
    Extended(usize, Vec<Vec<u8>>),
    /// Neither: descend inside the ranked tree.
    Descend,
}

impl RankedVsConnectedStrategy {
    fn rank_of(&self, pair: &GamePair) -> Result<usize> {
        let t = pair.board(self.ranked_side);
        match diameter_of(t) {
            Distance::Finite(d) if d >= 10 && d % 2 == 0 => Ok((d as usize - 8) / 2),
            other => Err(Error::Precondition(format!(
                "ranked trees have even diameter at least 10, got {other:?}"
            ))),
        }
    }

    fn case(&self, pair: &GamePair) -> Result<ConnectedCase> {
        let t = pair.board(self.ranked_side);
        let g = pair.board(self.ranked_side.other());
        if !g.is_connected() {
            return Err(Error::Precondition(
                "the opponent must be connected here".into(),
            ));
        }
        let d_t = match diameter_of(t) {
            Distance::Finite(d) => d as usize,
            Distance::Infinity => unreachable!("trees are connected"),
        };
        if !g.is_tree() {
            let cycle = shortest_cycle(g).expect("non-tree");
            let list = if cycle.len() <= d_t + 2 {
                cycle
            } else {
                cycle[..d_t + 2].to_vec()
            };
            return Ok(ConnectedCase::WalkList(self.ranked_side.other(), list));
        }
        let d_g = match diameter_of(g) {
            Distance::Finite(d) => d as usize,
            Distance::Infinity => unreachable!(),
        };
        if d_g != d_t {
            let (side, board, len) = if d_g > d_t {
                (self.ranked_side.other(), g, d_t + 1)
            } else {
                (self.ranked_side, t, d_g + 1)
            };
            // endpoints of an induced path of the target length: a geodesic
            let path = {
                let mut found = None;
                'outer: for u in 0..board.order() {
                    let dist = board.bfs_distances(u);
                    for v in 0..board.order() {
                        if dist[v] == Distance::Finite(len as u32) {
                            found = Some(geodesic(board, None, u, v));
                            break 'outer;
                        }
                    }
                }
                found.expect("a connected graph realizes every distance up to its diameter")
            };
            return Ok(ConnectedCase::StretchPath(side, path));
        }
        Ok(ConnectedCase::Apex(self.apex_case(pair)?))
    }

    fn apex_case(&self, pair: &GamePair) -> Result<ApexCase> {
        let t = pair.board(self.ranked_side);
        let g = pair.board(self.ranked_side.other());
        let k = self.rank_of(pair)?;
        let c = centers_of(g)[0];
        let rg = Rooting::build(g, c, None);
        let dist = bfs_restricted(g, None, c);
        let base = base_quadruple();
        // case 1: an apex embedding in no base tree
        let mut foreign: Option<usize> = None;
        for w in 0..g.order() {
            if dist[w] == Distance::Finite(k as u32) {
                let apex = rg.subtree_rooted(w);
                if base
                    .iter()
                    .all(|b| !embeds_as_rooted_subtree(&apex, b))
                {
                    foreign = foreign.min_by_key_or(w);
                }
            }
        }
        if let Some(w) = foreign {
            return Ok(ApexCase::Foreign(w));
        }
        // case 2: a vertex whose branch multiset strictly extends a ranked
        // member's branch set
        let rt = Rooting::build(t, centers_of(t)[0], None);
        for w in 0..g.order() {
            let j = match dist[w] {
                Distance::Finite(j) => j as usize,
                Distance::Infinity => continue,
            };
            if j > k {
                continue;
            }
            let i = k - j;
            // candidate members: the depth-j subtrees of the ranked tree
            // have rank i; their branch code sets are the comparison targets
            for v in 0..t.order() {
                if rt.depth_below[v] != i + 4 || bfs_restricted(t, None, rt.root)[v] != Distance::Finite(j as u32) {
                    continue;
                }
                let member_codes: Vec<Vec<u8>> = rt.children[v]
                    .iter()
                    .map(|&ch| rt.code[ch].clone())
                    .collect();
                if multiset_properly_contains(&rg.branch_codes(w), &member_codes) {
                    return Ok(ApexCase::Extended(w, member_codes));
                }
            }
            // also compare against every materialized member of rank i
            if i <= 2 {
                for member in super::ranked::gen_ranked(i)?.members {
                    let codes: Vec<Vec<u8>> = member
                        .branches()
                        .iter()
                        .map(RootedTree::canonical_code)
                        .collect();
                    if multiset_properly_contains(&rg.branch_codes(w), &codes) {
                        return Ok(ApexCase::Extended(w, codes));
                    }
                }
            }
        }
        Ok(ApexCase::Descend)
    }
}

trait MinByKeyOr {
    fn min_by_key_or(self, w: usize) -> Option<usize>;
}

impl MinByKeyOr for Option<usize> {
    fn min_by_key_or(self, w: usize) -> Option<usize> {
        Some(match self {
            None => w,
            Some(old) => old.min(w),
        })
    }
}

fn multiset_properly_contains(big: &[&[u8]], small: &[Vec<u8>]) -> bool {
    let mut big: Vec<&[u8]> = big.to_vec();
    for s in small {
        match big.iter().position(|b| *b == s.as_slice()) {
            Some(i) => {
                big.remove(i);
            }
            None => return false,
        }
    }
    !big.is_empty()
}

impl SpoilerStrategy for RankedVsConnectedStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        match self.case(pair)? {
            ConnectedCase::StretchPath(side, list) | ConnectedCase::WalkList(side, list) => {
                let r = pos.rounds_played();
                list.get(r).map(|&v| (side, v)).ok_or_else(|| {
                    Error::Precondition("walk exhausted without a win".into())
                })
            }
            ConnectedCase::Apex(apex) => self.apex_move(pair, pos, apex),
        }
    }
}

impl RankedVsConnectedStrategy {
    fn apex_move(&self, pair: &GamePair, pos: &Position, apex: ApexCase) -> Result<Move> {
        let t_side = self.ranked_side;
        let g_side = t_side.other();
        let t = pair.board(t_side);
        let g = pair.board(g_side);
        let center_t = centers_of(t)[0];
        let center_g = centers_of(g)[0];
        let play_side = match apex {
            ApexCase::Descend => t_side,
            _ => g_side,
        };
        let (play, my_center, opp, opp_center) = match play_side == t_side {
            true => (t, center_t, g, center_g),
            false => (g, center_g, t, center_t),
        };
        if pos.rounds_played() == 0 {
            return Ok((play_side, my_center));
        }
        // a non-central reply loses to the diametral path
        let reply = side_vertices(pos, play_side.other())[pos.pre];
        if !centers_of(opp).contains(&reply) {
            return CenterStrategy {
                play_side,
                anchor: pos.pre,
                start_round: 1,
            }
            .choose(pair, pos);
        }
        let rp = Rooting::build(play, my_center, None);
        let ro = Rooting::build(opp, reply, None);
        match apex {
            ApexCase::Foreign(w) => {
                let path = geodesic(g, None, center_g, w);
                let r = pos.rounds_played();
                if r < path.len() {
                    return Ok((g_side, path[r]));
                }
                // grow a connected witness inside the apex subtree,
                // breadth-first; nine vertices can never embed in a base tree
                let mut bfs = vec![w];
                let mut i = 0;
                while i < bfs.len() && bfs.len() < 9 {
                    let u = bfs[i];
                    i += 1;
                    for &c in &rp.children[u] {
                        if bfs.len() < 9 {
                            bfs.push(c);
                        }
                    }
                }
                bfs.into_iter()
                    .find(|&v| !pebbled(pos, g_side, v))
                    .map(|v| (g_side, v))
                    .ok_or_else(|| Error::Precondition("witness exhausted".into()))
            }
            ApexCase::Extended(w, member_codes) => {
                let path = geodesic(g, None, center_g, w);
                let r = pos.rounds_played();
                if r < path.len() {
                    return Ok((g_side, path[r]));
                }
                let w_round = path.len() - 1;
                let u = side_vertices(pos, t_side)[pos.pre + w_round];
                // the embedded member copy inside the apex: greedily match
                // one branch per member code
                let mut h_branches: Vec<usize> = Vec::new();
                let mut remaining = member_codes.clone();
                for &c in &rp.children[w] {
                    if let Some(i) = remaining.iter().position(|m| m == &rp.code[c]) {
                        remaining.remove(i);
                        h_branches.push(c);
                    }
                }
                if !remaining.is_empty() {
                    return Err(Error::Internal(
                        "extended case lost its member embedding".into(),
                    ));
                }
                let mut allowed = vec![false; g.order()];
                allowed[w] = true;
                for &b in &h_branches {
                    for v in rp.subtree_vertices(b) {
                        allowed[v] = true;
                    }
                }
                let f_u = ro.subtree_rooted(u);
                let h_w = {
                    let rw = Rooting::build(g, w, Some(&allowed));
                    rw.subtree_rooted(w)
                };
                if f_u.canonical_code() != h_w.canonical_code() {
                    // play the member copy against F_u
                    return ranked_continuous_play_restricted(
                        pair, pos, g_side, w, u, w_round + 1, &allowed,
                    );
                }
                // isomorphic: pebble a duplicate branch outside the copy,
                // then mirror Duplicator's child through the isomorphism
                let extra = rp.children[w]
                    .iter()
                    .copied()
                    .find(|c| !h_branches.contains(c))
                    .expect("proper extension leaves a branch outside the copy");
                if pos.rounds_played() == path.len() {
                    return Ok((g_side, extra));
                }
                let x = side_vertices(pos, t_side)[pos.pre + path.len()];
                // y: the copy vertex matching Duplicator's child x under the
                // unique isomorphism F_u -> H_w
                let rw = Rooting::build(g, w, Some(&allowed));
                let iso = diverging_iso(&ro, u, &rw, w);
                let y = iso
                    .iter()
                    .find(|&&(a, _)| a == x)
                    .map(|&(_, b)| b)
                    .ok_or_else(|| Error::Internal("iso image missing".into()))?;
                if pos.rounds_played() == path.len() + 1 {
                    return Ok((g_side, y));
                }
                // Duplicator answered with another child z of u; finish on
                // H_w(y) against F_u(z)
                let z = side_vertices(pos, t_side)[pos.pre + path.len() + 1];
                let mut allowed_y = vec![false; g.order()];
                for v in rw.subtree_vertices(y) {
                    allowed_y[v] = true;
                }
                ranked_continuous_play_restricted(
                    pair,
                    pos,
                    g_side,
                    y,
                    z,
                    path.len() + 2,
                    &allowed_y,
                )
            }
            ApexCase::Descend => ranked_continuous_move(
                pair,
                pos,
                t_side,
                (center_t, reply),
                1,
                None,
            ),
        }
    }
}

fn ranked_continuous_play_restricted(
    pair: &GamePair,
    pos: &Position,
    play_side: Side,
    play_root: usize,
    opp_root: usize,
    start_round: usize,
    allowed: &[bool],
) -> Result<Move> {
    ranked_continuous_move_rooted(pair, pos, play_side, play_root, opp_root, start_round, Some(allowed))
}

/// As [`ranked_continuous_move`] but with explicit root vertices.
fn ranked_continuous_move_rooted(
    pair: &GamePair,
    pos: &Position,
    play_side: Side,
    play_root: usize,
    opp_root: usize,
    start_round: usize,
    allowed_play: Option<&[bool]>,
) -> Result<Move> {
    let play = pair.board(play_side);
    let opp = pair.board(play_side.other());
    let rp = Rooting::build(play, play_root, allowed_play);
    let ro = Rooting::build(opp, opp_root, None);
    let (mut cp, mut co) = (play_root, opp_root);
    let mut r = start_round;
    while r < pos.rounds_played() {
        if rp.depth_below[cp] > 4 {
            cp = side_vertices(pos, play_side)[pos.pre + r];
            co = side_vertices(pos, play_side.other())[pos.pre + r];
        }
        r += 1;
    }
    if rp.depth_below[cp] > 4 {
        let c = rp
            .fresh_child(cp, &ro.branch_codes(co))
            .ok_or_else(|| Error::Precondition("no missing branch to descend into".into()))?;
        return Ok((play_side, c));
    }
    let mut bfs = vec![cp];
    let mut i = 0;
    while i < bfs.len() {
        let u = bfs[i];
        i += 1;
        for &c in &rp.children[u] {
            bfs.push(c);
        }
    }
    bfs.into_iter()
        .find(|&v| !pebbled(pos, play_side, v))
        .map(|v| (play_side, v))
        .ok_or_else(|| Error::Precondition("rank-0 subtree exhausted".into()))
}

// ---------- ranked tree against a disconnected graph ----------

/// Ranked tree (on `ranked_side`) against a disconnected graph.
pub struct RankedVsDisconnectedStrategy {
    pub ranked_side: Side,
}

pub fn ranked_vs_disconnected_strategy(ranked_side: Side) -> RankedVsDisconnectedStrategy {
    RankedVsDisconnectedStrategy { ranked_side }
}

impl RankedVsDisconnectedStrategy {
    fn twin_component(&self, pair: &GamePair) -> Result<Option<Vec<usize>>> {
        let t = pair.board(self.ranked_side);
        let h = pair.board(self.ranked_side.other());
        let t_code = crate::graph::tree_canonical_code(t)?;
        for comp in h.components() {
            let (sub, map) = h.induced(&comp);
            if sub.is_tree() && crate::graph::tree_canonical_code(&sub)? == t_code {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }

    /// A component where Spoiler can win while playing inside it.
    fn hostile_component(&self, pair: &GamePair) -> Result<Option<Vec<usize>>> {
        let t = pair.board(self.ranked_side);
        let h = pair.board(self.ranked_side.other());
        let d_t = match diameter_of(t) {
            Distance::Finite(d) => d as usize,
            Distance::Infinity => unreachable!(),
        };
        for comp in h.components() {
            let (sub, map) = h.induced(&comp);
            if !sub.is_tree() {
                return Ok(Some(map));
            }
            let d_sub = match diameter_of(&sub) {
                Distance::Finite(d) => d as usize,
                Distance::Infinity => unreachable!("components are connected"),
            };
            if d_sub > d_t {
                return Ok(Some(map));
            }
            if d_sub == d_t {
                // the apex analysis decides whether in-component play wins
                let probe = RankedVsConnectedStrategy {
                    ranked_side: Side::G,
                };
                let pair_probe = GamePair::new(t, &sub);
                if let ConnectedCase::Apex(ApexCase::Descend) = probe.case(&pair_probe)? {
                    continue;
                }
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}

impl SpoilerStrategy for RankedVsDisconnectedStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
        let t_side = self.ranked_side;
        let h_side = t_side.other();
        let t = pair.board(t_side);
        let h = pair.board(h_side);
        if h.is_connected() {
            return Err(Error::Precondition(
                "this strategy needs a disconnected opponent".into(),
            ));
        }
        if let Some(comp) = self.twin_component(pair)? {
            return self.twin_play(pair, pos, &comp);
        }
        if let Some(comp) = self.hostile_component(pair)? {
            // play entirely inside the hostile component: its induced
            // subgraph beats the ranked tree on its own
            return self.component_play(pair, pos, &comp);
        }
        // play inside the ranked tree from its center
        if pos.rounds_played() == 0 {
            return Ok((t_side, centers_of(t)[0]));
        }
        let reply = side_vertices(pos, h_side)[pos.pre];
        let comp = h
            .components()
            .into_iter()
            .find(|c| c.contains(&reply))
            .expect("reply lies in some component");
        let (sub, map) = h.induced(&comp);
        let d_t = match diameter_of(t) {
            Distance::Finite(d) => d as usize,
            Distance::Infinity => unreachable!(),
        };
        let d_sub = diameter_of(&sub);
        let same_diameter_center = d_sub == Distance::Finite(d_t as u32)
            && centers_of(&sub)
                .iter()
                .any(|&c| map[c] == reply);
        if !same_diameter_center {
            // stretch the diametral path of the ranked tree through its
            // center; the image is trapped in a too-shallow component
            return CenterStrategy {
                play_side: t_side,
                anchor: pos.pre,
                start_round: 1,
            }
            .choose(pair, pos);
        }
        ranked_continuous_move_rooted(
            pair,
            pos,
            t_side,
            side_vertices(pos, t_side)[pos.pre],
            reply,
            1,
            None,
        )
    }
}

impl RankedVsDisconnectedStrategy {
    /// No component matches the ranked tree, but one of them is hostile:
    /// defer to the connected-case strategy with the component as opponent,
    /// translating vertex ids.
    fn component_play(&self, pair: &GamePair, pos: &Position, comp: &[usize]) -> Result<Move> {
        let t_side = self.ranked_side;
        let h_side = t_side.other();
        let t = pair.board(t_side);
        let h = pair.board(h_side);
        let (sub, map) = h.induced(comp);
        let back = |v: usize| map[v];
        let fwd = |v: usize| map.iter().position(|&m| m == v);
        // build the translated position: G = ranked tree, H = component
        let mut translated = Position {
            pre: pos.pre,
            gu: side_vertices(pos, t_side).clone(),
            hv: Vec::new(),
            moves: pos.moves.clone(),
        };
        for &v in side_vertices(pos, h_side) {
            let local = fwd(v).ok_or_else(|| {
                Error::Precondition("pebbles left the hostile component".into())
            })?;
            translated.hv.push(local);
        }
        translated.moves = pos
            .moves
            .iter()
            .map(|&s| if s == t_side { Side::G } else { Side::H })
            .collect();
        let probe = RankedVsConnectedStrategy {
            ranked_side: Side::G,
        };
        let pair_probe = GamePair::new(t, &sub);
        let (side, v) = probe.choose(&pair_probe, &translated)?;
        Ok(match side {
            Side::G => (t_side, v),
            Side::H => (h_side, back(v)),
        })
    }

    /// A component is isomorphic to the ranked tree: pebble outside it, walk
    /// from the twin's center toward the twin of Duplicator's first reply.
    fn twin_play(&self, pair: &GamePair, pos: &Position, comp: &[usize]) -> Result<Move> {
        let t_side = self.ranked_side;
        let h_side = t_side.other();
        let t = pair.board(t_side);
        let h = pair.board(h_side);
        let outside = (0..h.order())
            .find(|v| !comp.contains(v))
            .expect("a disconnected graph has vertices outside the twin");
        if pos.rounds_played() == 0 {
            return Ok((h_side, outside));
        }
        let p = side_vertices(pos, t_side)[pos.pre];
        let (sub, map) = h.induced(comp);
        let center_t = centers_of(t)[0];
        let center_twin_local = centers_of(&sub)[0];
        let center_twin = map[center_twin_local];
        if pos.rounds_played() == 1 {
            return Ok((h_side, center_twin));
        }
        let reply_to_center = side_vertices(pos, t_side)[pos.pre + 1];
        if !centers_of(t).contains(&reply_to_center) {
            // diametral path inside the twin component
            let mut allowed = vec![false; h.order()];
            for &v in comp {
                allowed[v] = true;
            }
            let path = diametral_path(h, Some(&allowed));
            let next = path
                .iter()
                .copied()
                .find(|&v| !pebbled(pos, h_side, v))
                .ok_or_else(|| Error::Precondition("twin diametral path exhausted".into()))?;
            return Ok((h_side, next));
        }
        // walk from the twin center toward the twin image of p
        let rt = Rooting::build(t, center_t, None);
        let mut allowed = vec![false; h.order()];
        for &v in comp {
            allowed[v] = true;
        }
        let rtwin = Rooting::build(h, center_twin, Some(&allowed));
        let iso = diverging_iso(&rt, center_t, &rtwin, center_twin);
        let p_twin = iso
            .iter()
            .find(|&&(a, _)| a == p)
            .map(|&(_, b)| b)
            .ok_or_else(|| Error::Internal("twin image missing".into()))?;
        let path = geodesic(h, Some(&allowed), center_twin, p_twin);
        // rounds 2.. walk path[1..]; detect deviation of Duplicator from the
        // mirrored path in T
        let t_path = geodesic(t, None, center_t, p);
        for r in 2..pos.rounds_played() {
            let step = r - 1; // index into path
            let expected = t_path.get(step).copied();
            let actual = side_vertices(pos, t_side)[pos.pre + r];
            if expected != Some(actual) {
                // deviation: finish on the twin subtree against hers
                let y_twin = path[step];
                let mut allowed_sub = vec![false; h.order()];
                for v in rtwin.subtree_vertices(y_twin) {
                    allowed_sub[v] = true;
                }
                return ranked_continuous_move_rooted(
                    pair,
                    pos,
                    h_side,
                    y_twin,
                    actual,
                    r + 1,
                    Some(&allowed_sub),
                );
            }
        }
        let step = pos.rounds_played() - 1;
        path.get(step)
            .map(|&v| (h_side, v))
            .ok_or_else(|| Error::Precondition("twin walk exhausted".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::gen_diverging_tree;
    use super::*;
    use crate::efgame::verify_strategy;

    #[test]
    fn distance_strategy_on_prepared_paths() {
        // endpoints of P5 at distance 4 against endpoints of P6 at distance 5
        let p5 = Graph::path(5);
        let p6 = Graph::path(6);
        let pos = Position::with_setup(&[(0, 0), (4, 5)]);
        let s = distance_strategy(Side::G, (0, 1));
        assert!(verify_strategy(&s, &p5, &p6, 2, None, &pos).unwrap());
    }

    #[test]
    fn diameter_strategy_p5_vs_p7() {
        let s = diameter_strategy();
        let p5 = Graph::path(5);
        let p7 = Graph::path(7);
        // d(P5)=4: within ceil(log 4) + 2 = 4 rounds
        assert!(verify_strategy(&s, &p5, &p7, 4, Some(1), &Position::empty()).unwrap());
    }

    #[test]
    fn cycle_strategy_p4_vs_c4() {
        let s = cycle_strategy();
        let p4 = Graph::path(4);
        let c4 = Graph::cycle(4);
        // within ceil(log 3) + 4 = 6 rounds, no alternation at all
        assert!(verify_strategy(&s, &p4, &c4, 6, Some(0), &Position::empty()).unwrap());
    }

    #[test]
    fn diverging_strategy_small_instance() {
        let a = gen_diverging_tree(8, 2).unwrap();
        let b = gen_diverging_tree(7, 2).unwrap();
        // equal diameters needed: 8 and 7 vertices at radius 3 share d = 6?
        let da = a.metrics().diameter;
        let db = b.metrics().diameter;
        if da == db {
            let s = diverging_strategy();
            assert!(verify_strategy(&s, &a, &b, 4, None, &Position::empty()).unwrap());
        }
    }
}
