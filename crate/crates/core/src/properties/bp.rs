//! Layered branching programs, their segment decomposition, and the
//! read-once proximity-oblivious MAP.

use std::any::Any;
use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::parity::balanced_bounds;
use crate::error::{Error, Result};
use crate::oracle::ceil_log2;
use crate::protocol::{bits_of, value_of, Block, Decomposition, PoMap, SubProperty, SubVerifier};
use crate::rng::TrialRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub var: usize,
    /// Successor in the next layer on reading 0 / 1.
    pub next: [usize; 2],
}

/// Layers `V_0..V_ℓ`; `layers[t]` holds the nodes of `V_t` for `t < ℓ`,
/// and `V_ℓ` consists of `sinks` terminal nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredBP {
    pub n: usize,
    pub layers: Vec<Vec<Node>>,
    pub sinks: usize,
    pub accepting: Vec<bool>,
}

impl LayeredBP {
    pub fn new(n: usize, layers: Vec<Vec<Node>>, sinks: usize, accepting: Vec<bool>) -> Result<Self> {
        let bp = Self {
            n,
            layers,
            sinks,
            accepting,
        };
        bp.validate()?;
        Ok(bp)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.layers.is_empty() || self.layers[0].len() != 1 {
            return bad("layer 0 must hold exactly one node".into());
        }
        if self.accepting.len() != self.sinks {
            return bad("accepting flags must cover every sink".into());
        }
        for (t, layer) in self.layers.iter().enumerate() {
            let next_len = self.layer_size(t + 1);
            for node in layer {
                if node.var >= self.n || node.next.iter().any(|&s| s >= next_len) {
                    return bad(format!("node in layer {t} is malformed"));
                }
            }
        }
        Ok(())
    }

    pub fn length(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_size(&self, t: usize) -> usize {
        if t == self.layers.len() {
            self.sinks
        } else {
            self.layers[t].len()
        }
    }

    pub fn width(&self) -> usize {
        (0..=self.length()).map(|t| self.layer_size(t)).max().unwrap()
    }

    /// Node reached in layer `to` from `node` in layer `from`.
    pub fn run_segment(&self, from: usize, to: usize, mut node: usize, x: impl Fn(usize) -> u8) -> usize {
        for t in from..to {
            let nd = self.layers[t][node];
            node = nd.next[x(nd.var) as usize];
        }
        node
    }

    pub fn evaluate(&self, x: &[u8]) -> usize {
        self.run_segment(0, self.length(), 0, |v| x[v])
    }

    pub fn accepts(&self, x: &[u8]) -> bool {
        self.accepting[self.evaluate(x)]
    }

    /// Variables read by nodes in layers `from..to`.
    pub fn segment_vars(&self, from: usize, to: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.layers[from..to]
            .iter()
            .flat_map(|l| l.iter().map(|n| n.var))
            .collect();
        set.into_iter().collect()
    }

    /// True when each layer reads a single variable and no variable is read
    /// by two layers.
    pub fn is_oblivious_read_once(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.layers.iter().all(|l| {
            let v = l[0].var;
            l.iter().all(|n| n.var == v) && seen.insert(v)
        })
    }

    /// Nodes of layer `to` reachable from `node` in layer `from` under some
    /// assignment of the segment's edges.
    pub fn reachable(&self, from: usize, to: usize, node: usize) -> Vec<bool> {
        let mut cur = vec![false; self.layer_size(from)];
        cur[node] = true;
        for t in from..to {
            let mut nxt = vec![false; self.layer_size(t + 1)];
            for (i, &on) in cur.iter().enumerate() {
                if on {
                    for &s in &self.layers[t][i].next {
                        nxt[s] = true;
                    }
                }
            }
            cur = nxt;
        }
        cur
    }

    /// Exact relative distance of `x` to the accepted set.
    pub fn distance(&self, x: &[u8]) -> f64 {
        let vars: Vec<usize> = (0..self.n).collect();
        let targets: Vec<usize> = (0..self.sinks).filter(|&s| self.accepting[s]).collect();
        let flips = route_flips(self, 0, self.length(), 0, &targets, &vars, x);
        match flips {
            Some(f) => f as f64 / self.n as f64,
            None => 1.0,
        }
    }
}

/// Width-2 program for even parity, reading `x_1..x_n` in order.
pub fn parity_bp(n: usize) -> LayeredBP {
    let mut layers = vec![vec![Node { var: 0, next: [0, 1] }]];
    for t in 1..n {
        layers.push(vec![Node { var: t, next: [0, 1] }, Node { var: t, next: [1, 0] }]);
    }
    LayeredBP::new(n, layers, 2, vec![true, false]).unwrap()
}

/// Read-once program for `x_{2i} = x_{2i+1}` for all `i`; `n` even. Width 3
/// plus a rejecting sink.
pub fn pair_equality_bp(n: usize) -> LayeredBP {
    assert!(n >= 2 && n % 2 == 0);
    // even layers: [ok, dead]; odd layers: [saw0, saw1, dead]
    let mut layers = Vec::with_capacity(n);
    for t in 0..n {
        if t % 2 == 0 {
            let mut l = vec![Node { var: t, next: [0, 1] }];
            if t > 0 {
                l.push(Node { var: t, next: [2, 2] });
            }
            layers.push(l);
        } else {
            layers.push(vec![
                Node { var: t, next: [0, 1] },
                Node { var: t, next: [1, 0] },
                Node { var: t, next: [1, 1] },
            ]);
        }
    }
    LayeredBP::new(n, layers, 2, vec![true, false]).unwrap()
}

/// Minimum flips of the variables in `vars` (block positions) that route
/// `start` at layer `from` to a node of `targets` at layer `to`. A layer DP
/// when no variable is read by two layers of the segment (then it is exact);
/// otherwise exhaustive over the segment's variables.
fn route_flips(
    bp: &LayeredBP,
    from: usize,
    to: usize,
    start: usize,
    targets: &[usize],
    vars: &[usize],
    x: &[u8],
) -> Option<usize> {
    let pos = |v: usize| vars.binary_search(&v).ok();
    let mut owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let layer_disjoint = (from..to).all(|t| {
        bp.layers[t]
            .iter()
            .all(|nd| *owner.entry(nd.var).or_insert(t) == t)
    });
    if !layer_disjoint {
        assert!(vars.len() <= 24, "exhaustive routing limited to 24 variables");
        let mut best: Option<usize> = None;
        for mask in 0u64..1 << vars.len() {
            let flips = mask.count_ones() as usize;
            if best.is_some_and(|b| flips >= b) {
                continue;
            }
            let end = bp.run_segment(from, to, start, |v| {
                let p = pos(v).expect("segment variable");
                x[vars[p]] ^ ((mask >> p) & 1) as u8
            });
            if targets.contains(&end) {
                best = Some(flips);
            }
        }
        return best;
    }
    const INF: usize = usize::MAX / 2;
    let mut cost = vec![INF; bp.layer_size(from)];
    cost[start] = 0;
    for t in from..to {
        let mut next = vec![INF; bp.layer_size(t + 1)];
        for (i, &c) in cost.iter().enumerate() {
            if c >= INF {
                continue;
            }
            let nd = bp.layers[t][i];
            for b in 0..2u8 {
                let add = (x[nd.var] != b) as usize;
                let s = nd.next[b as usize];
                next[s] = next[s].min(c + add);
            }
        }
        cost = next;
    }
    targets.iter().map(|&t| cost[t]).filter(|&c| c < INF).min()
}

/// Strings routed from `start` (layer `from`) to `end` (layer `to`).
#[derive(Debug, Clone)]
pub struct RoutedSegment {
    pub bp: Arc<LayeredBP>,
    pub from: usize,
    pub to: usize,
    pub start: usize,
    pub end: usize,
    /// Sorted variables of the segment; block position `t` holds `vars[t]`.
    pub vars: Vec<usize>,
}

impl RoutedSegment {
    /// Input with the block spread over its variables (others zero).
    fn spread(&self, block: &[u8]) -> Vec<u8> {
        let mut x = vec![0u8; self.bp.n];
        for (t, &v) in self.vars.iter().enumerate() {
            x[v] = block[t];
        }
        x
    }
}

impl SubProperty for RoutedSegment {
    fn contains(&self, block: &[u8]) -> bool {
        let x = self.spread(block);
        self.bp.run_segment(self.from, self.to, self.start, |v| x[v]) == self.end
    }

    fn distance(&self, block: &[u8]) -> f64 {
        if block.is_empty() {
            return if self.contains(block) { 0.0 } else { 1.0 };
        }
        let x = self.spread(block);
        match route_flips(&self.bp, self.from, self.to, self.start, &[self.end], &self.vars, &x) {
            Some(f) => f as f64 / block.len() as f64,
            None => 1.0,
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Segment decomposition: `S` = boundary states `(v_1..v_k)` with
/// `v_i ∈ V_{L_i}` and `v_k` accepting.
#[derive(Debug, Clone)]
pub struct BpDecomposition {
    pub bp: Arc<LayeredBP>,
    k: usize,
    /// Layer boundaries `L_0 = 0 < … < L_k = ℓ`.
    pub cuts: Vec<usize>,
    state_bits: usize,
}

pub fn bp_decomposition(bp: LayeredBP, k: usize) -> BpDecomposition {
    let k = k.clamp(1, bp.length());
    let cuts = balanced_bounds(bp.length(), k);
    let state_bits = ceil_log2(bp.width() as u64).max(1) as usize;
    BpDecomposition {
        bp: Arc::new(bp),
        k,
        cuts,
        state_bits,
    }
}

impl BpDecomposition {
    pub fn state_bits(&self) -> usize {
        self.state_bits
    }

    pub fn decode_states(&self, y: &[u8]) -> Option<Vec<usize>> {
        if y.len() != self.spec_bits() || y.iter().any(|&b| b > 1) {
            return None;
        }
        let states: Vec<usize> = y
            .chunks(self.state_bits)
            .map(|c| value_of(c) as usize)
            .collect();
        for (i, &s) in states.iter().enumerate() {
            if s >= self.bp.layer_size(self.cuts[i + 1]) {
                return None;
            }
        }
        if !self.bp.accepting[states[self.k - 1]] {
            return None;
        }
        // every segment must be passable on some assignment of its variables
        let mut prev = 0;
        for (i, &s) in states.iter().enumerate() {
            let (from, to) = (self.cuts[i], self.cuts[i + 1]);
            let vars = self.bp.segment_vars(from, to);
            let zeros = vec![0u8; self.bp.n];
            route_flips(&self.bp, from, to, prev, &[s], &vars, &zeros)?;
            prev = s;
        }
        Some(states)
    }

    pub fn encode_states(&self, states: &[usize]) -> Vec<u8> {
        states
            .iter()
            .flat_map(|&s| bits_of(s as u64, self.state_bits))
            .collect()
    }

    /// Boundary states along the computation path on `x`.
    pub fn boundary_states(&self, x: &[u8]) -> Vec<usize> {
        let mut node = 0;
        (0..self.k)
            .map(|i| {
                node = self.bp.run_segment(self.cuts[i], self.cuts[i + 1], node, |v| x[v]);
                node
            })
            .collect()
    }

    /// Declared distance constant: 1 when segments read disjoint variable
    /// sets, 0 (no guarantee) otherwise.
    fn disjoint_segments(&self) -> bool {
        let mut seen = BTreeSet::new();
        (0..self.k).all(|i| {
            self.bp
                .segment_vars(self.cuts[i], self.cuts[i + 1])
                .into_iter()
                .all(|v| seen.insert(v))
        })
    }
}

impl Decomposition for BpDecomposition {
    fn name(&self) -> &str {
        "layeredbp"
    }

    fn n(&self) -> usize {
        self.bp.n
    }

    fn k(&self) -> usize {
        self.k
    }

    fn spec_bits(&self) -> usize {
        self.k * self.state_bits
    }

    fn c_dec(&self) -> f64 {
        if self.disjoint_segments() {
            1.0
        } else {
            0.0
        }
    }

    fn blocks(&self, y: &[u8]) -> Option<Vec<Block>> {
        let states = self.decode_states(y)?;
        Some(
            (0..self.k)
                .map(|i| {
                    let (from, to) = (self.cuts[i], self.cuts[i + 1]);
                    let vars = self.bp.segment_vars(from, to);
                    Block {
                        coords: vars.clone(),
                        property: Arc::new(RoutedSegment {
                            bp: Arc::clone(&self.bp),
                            from,
                            to,
                            start: if i == 0 { 0 } else { states[i - 1] },
                            end: states[i],
                            vars,
                        }),
                    }
                })
                .collect(),
        )
    }

    fn honest_spec(&self, x: &[u8]) -> Option<Vec<u8>> {
        if !self.bp.accepts(x) {
            return None;
        }
        Some(self.encode_states(&self.boundary_states(x)))
    }

    fn contains(&self, x: &[u8]) -> bool {
        self.bp.accepts(x)
    }

    fn distance(&self, x: &[u8]) -> f64 {
        self.bp.distance(x)
    }
}

/// Proximity-oblivious segment checker for oblivious read-once segments.
/// The sub-proof lists the interior nodes of the claimed path; one step is
/// chosen uniformly and its variable read. A path containing a step that no
/// edge realises is rejected without reading.
#[derive(Debug, Clone, Copy)]
pub struct SegmentStepChecker {
    pub state_bits: usize,
}

impl SegmentStepChecker {
    fn segment(block: &Block) -> &RoutedSegment {
        block
            .property
            .as_any()
            .downcast_ref::<RoutedSegment>()
            .expect("step checker needs a RoutedSegment block")
    }

    /// Path nodes for layers `from..=to`, or `None` if some step is
    /// unrealisable or a node index is out of range.
    fn path(&self, seg: &RoutedSegment, proof: &[u8]) -> Option<Vec<usize>> {
        let steps = seg.to - seg.from;
        let mut path = vec![seg.start];
        for t in 1..steps {
            let bits = proof.get((t - 1) * self.state_bits..t * self.state_bits)?;
            let s = value_of(bits) as usize;
            if s >= seg.bp.layer_size(seg.from + t) {
                return None;
            }
            path.push(s);
        }
        path.push(seg.end);
        for t in 0..steps {
            if !seg.bp.layers[seg.from + t][path[t]].next.contains(&path[t + 1]) {
                return None;
            }
        }
        Some(path)
    }

    /// Per step: `None` if both edges lead on, else the bit that must be
    /// read, together with the variable's block position.
    fn requirements(seg: &RoutedSegment, path: &[usize]) -> Vec<Option<(usize, u8)>> {
        (0..seg.to - seg.from)
            .map(|t| {
                let nd = seg.bp.layers[seg.from + t][path[t]];
                let pos = seg.vars.binary_search(&nd.var).unwrap();
                match (nd.next[0] == path[t + 1], nd.next[1] == path[t + 1]) {
                    (true, true) => None,
                    (true, false) => Some((pos, 0)),
                    _ => Some((pos, 1)),
                }
            })
            .collect()
    }

    pub fn honest_subproof(&self, seg: &RoutedSegment, x: &[u8], width: usize) -> Vec<u8> {
        let mut out = Vec::new();
        let mut node = seg.start;
        for t in seg.from..seg.to - 1 {
            let nd = seg.bp.layers[t][node];
            node = nd.next[x[nd.var] as usize];
            out.extend(bits_of(node as u64, self.state_bits));
        }
        out.resize(width, 0);
        out
    }
}

impl SubVerifier for SegmentStepChecker {
    fn name(&self) -> &str {
        "segment-step"
    }

    fn exponents(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn proof_bits(&self, blocks: &[Block]) -> usize {
        blocks
            .iter()
            .map(|b| {
                let s = Self::segment(b);
                (s.to - s.from).saturating_sub(1) * self.state_bits
            })
            .max()
            .unwrap_or(0)
    }

    fn queries(&self, _m: usize, _delta: f64) -> u64 {
        1
    }

    fn detection(&self, delta: f64, _m: usize) -> Option<f64> {
        Some(delta)
    }

    fn rejection_probability(&self, block: &Block, bits: &[u8], proof: &[u8], _delta: f64) -> f64 {
        let seg = Self::segment(block);
        let Some(path) = self.path(seg, proof) else {
            return 1.0;
        };
        let req = Self::requirements(seg, &path);
        let bad = req
            .iter()
            .filter(|r| matches!(r, Some((p, b)) if bits[*p] != *b))
            .count();
        bad as f64 / req.len().max(1) as f64
    }

    fn measured_run(
        &self,
        block: &Block,
        bits: &[u8],
        proof: &[u8],
        _delta: f64,
        reject: bool,
        rng: &mut TrialRng,
        read: &mut dyn FnMut(usize) -> u8,
    ) {
        let seg = Self::segment(block);
        let Some(path) = self.path(seg, proof) else {
            return;
        };
        let req = Self::requirements(seg, &path);
        let candidates: Vec<usize> = (0..req.len())
            .filter(|&t| {
                let bad = matches!(req[t], Some((p, b)) if bits[p] != b);
                bad == reject
            })
            .collect();
        let pool: Vec<usize> = if candidates.is_empty() {
            (0..req.len()).collect()
        } else {
            candidates
        };
        let t = pool[rng.gen_range(0..pool.len())];
        let nd = seg.bp.layers[seg.from + t][path[t]];
        read(seg.vars.binary_search(&nd.var).unwrap());
    }
}

/// The read-once MAP: the proof is the `k` boundary states; the verifier
/// picks a uniform segment, reads its variables, and simulates.
#[derive(Debug, Clone)]
pub struct RobpPoMap {
    pub dec: BpDecomposition,
}

impl RobpPoMap {
    pub fn new(bp: LayeredBP, k: usize) -> Result<Self> {
        if !bp.is_oblivious_read_once() {
            return Err(Error::Config("program is not an oblivious read-once program".into()));
        }
        Ok(Self {
            dec: bp_decomposition(bp, k),
        })
    }

    fn max_segment(&self) -> usize {
        self.dec
            .cuts
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    /// Per segment: `Some(consistent)`, or `None` if unroutable.
    fn audit(&self, x: &[u8], states: &[usize]) -> Vec<Option<bool>> {
        let bp = &self.dec.bp;
        (0..self.dec.k)
            .map(|i| {
                let (from, to) = (self.dec.cuts[i], self.dec.cuts[i + 1]);
                let start = if i == 0 { 0 } else { states[i - 1] };
                if !bp.reachable(from, to, start)[states[i]] {
                    return None;
                }
                Some(bp.run_segment(from, to, start, |v| x[v]) == states[i])
            })
            .collect()
    }

    /// Fraction of segments inconsistent with `x` under `proof`.
    pub fn inconsistent_fraction(&self, x: &[u8], proof: &[u8]) -> Option<f64> {
        let states = self.dec.decode_states(proof)?;
        let a = self.audit(x, &states);
        if a.iter().any(Option::is_none) {
            return None;
        }
        Some(a.iter().filter(|s| **s == Some(false)).count() as f64 / self.dec.k as f64)
    }
}

impl PoMap for RobpPoMap {
    fn name(&self) -> &str {
        "robp"
    }

    fn n(&self) -> usize {
        self.dec.bp.n
    }

    fn proof_bits(&self) -> usize {
        self.dec.spec_bits()
    }

    fn queries(&self) -> u64 {
        self.max_segment() as u64
    }

    /// Each inconsistent segment can be repaired with at most
    /// `max_segment` flips, so the inconsistent fraction is at least
    /// `ε·n/(k·max_segment)`.
    fn detection(&self, eps: f64) -> f64 {
        eps * self.dec.bp.n as f64 / (self.dec.k * self.max_segment()) as f64
    }

    fn honest_proof(&self, x: &[u8]) -> Option<Vec<u8>> {
        self.dec.honest_spec(x)
    }

    fn rejection_probability(&self, x: &[u8], proof: &[u8]) -> f64 {
        self.inconsistent_fraction(x, proof).unwrap_or(1.0)
    }

    fn measured_run(
        &self,
        x: &[u8],
        proof: &[u8],
        reject: bool,
        rng: &mut TrialRng,
        read: &mut dyn FnMut(usize) -> u8,
    ) {
        let Some(states) = self.dec.decode_states(proof) else {
            return;
        };
        let audit = self.audit(x, &states);
        if audit.iter().any(Option::is_none) {
            return;
        }
        let pool: Vec<usize> = (0..self.dec.k)
            .filter(|&i| (audit[i] == Some(false)) == reject)
            .collect();
        let i = if pool.is_empty() {
            rng.gen_range(0..self.dec.k)
        } else {
            pool[rng.gen_range(0..pool.len())]
        };
        for v in self.dec.bp.segment_vars(self.dec.cuts[i], self.dec.cuts[i + 1]) {
            read(v);
        }
    }
}

/// Pair-equality input with exactly `unequal` unequal pairs, spread evenly.
pub fn pair_equality_input(n: usize, unequal: usize, rng: &mut TrialRng) -> Vec<u8> {
    let pairs = n / 2;
    let mut x = vec![0u8; n];
    for i in 0..pairs {
        let b = rng.gen_range(0..2u8);
        x[2 * i] = b;
        x[2 * i + 1] = b;
    }
    for j in 0..unequal.min(pairs) {
        let i = j * pairs / unequal;
        x[2 * i + 1] ^= 1;
    }
    x
}

/// Random layered program of length `len` and width `w` over `n`
/// variables. With `oblivious`, layer `t` reads variable `t mod n`;
/// otherwise each node reads a uniform variable. Sink 0 accepts.
pub fn random_layered_bp(n: usize, len: usize, w: usize, oblivious: bool, rng: &mut TrialRng) -> LayeredBP {
    let sizes: Vec<usize> = (0..=len)
        .map(|t| if t == 0 { 1 } else { rng.gen_range(1..=w) })
        .collect();
    let layers = (0..len)
        .map(|t| {
            (0..sizes[t])
                .map(|_| Node {
                    var: if oblivious { t % n } else { rng.gen_range(0..n) },
                    next: [rng.gen_range(0..sizes[t + 1]), rng.gen_range(0..sizes[t + 1])],
                })
                .collect()
        })
        .collect();
    let sinks = sizes[len];
    let accepting = (0..sinks).map(|s| s == 0).collect();
    LayeredBP::new(n, layers, sinks, accepting).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn parity_program_is_xor() {
        for n in 1..=12 {
            let bp = parity_bp(n);
            assert!(bp.width() <= 2);
            for v in 0u64..1 << n {
                let x = bits_of(v, n);
                assert_eq!(bp.accepts(&x), v.count_ones() % 2 == 0);
            }
        }
    }

    #[test]
    fn pair_equality_semantics_and_distance() {
        let bp = pair_equality_bp(8);
        assert!(bp.is_oblivious_read_once());
        for v in 0u64..256 {
            let x = bits_of(v, 8);
            let unequal = (0..4).filter(|&i| x[2 * i] != x[2 * i + 1]).count();
            assert_eq!(bp.accepts(&x), unequal == 0);
            assert_eq!(bp.distance(&x), unequal as f64 / 8.0);
        }
    }

    #[test]
    fn honest_states_accepted() {
        let d = bp_decomposition(parity_bp(8), 4);
        let x = [1, 1, 0, 1, 0, 0, 1, 0];
        let y = d.honest_spec(&x).unwrap();
        for b in d.blocks(&y).unwrap() {
            assert!(b.property.contains(&b.extract(&x)));
        }
    }

    /// Minimum flips over every assignment of the input.
    fn brute_distance(bp: &LayeredBP, x: &[u8]) -> f64 {
        let n = bp.n;
        (0u64..1 << n)
            .filter(|&m| {
                let y: Vec<u8> = (0..n).map(|i| x[i] ^ ((m >> i) & 1) as u8).collect();
                bp.accepts(&y)
            })
            .map(|m| m.count_ones())
            .min()
            .map_or(1.0, |f| f as f64 / n as f64)
    }

    #[test]
    fn distance_matches_brute_force() {
        let mut rng = rng_from_seed(9);
        for trial in 0..30 {
            let n = rng.gen_range(2..=8);
            let bp = if trial % 2 == 0 {
                random_layered_bp(n, n, 3, true, &mut rng)
            } else {
                random_layered_bp(n, n + 2, 3, false, &mut rng)
            };
            for _ in 0..8 {
                let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                assert_eq!(bp.distance(&x), brute_distance(&bp, &x));
            }
        }
        let bp = pair_equality_bp(24);
        let x: Vec<u8> = (0..24).map(|_| rng.gen_range(0..2)).collect();
        let unequal = (0..12).filter(|&i| x[2 * i] != x[2 * i + 1]).count();
        assert_eq!(bp.distance(&x), unequal as f64 / 24.0);
    }

    #[test]
    fn step_checker_detects_at_least_distance() {
        let d = bp_decomposition(pair_equality_bp(12), 3);
        let checker = SegmentStepChecker {
            state_bits: d.state_bits(),
        };
        let mut rng = rng_from_seed(4);
        for _ in 0..200 {
            let x: Vec<u8> = (0..12).map(|_| rng.gen_range(0..2)).collect();
            let y: Vec<u8> = (0..d.spec_bits()).map(|_| rng.gen_range(0..2)).collect();
            let Some(blocks) = d.blocks(&y) else { continue };
            let p = checker.proof_bits(&blocks);
            for b in &blocks {
                let bits = b.extract(&x);
                let proof: Vec<u8> = (0..p).map(|_| rng.gen_range(0..2)).collect();
                let r = checker.rejection_probability(b, &bits, &proof, 0.5);
                assert!(r + 1e-12 >= b.property.distance(&bits));
            }
        }
    }

    #[test]
    fn robp_honest_accepts_and_far_detects() {
        let bp = pair_equality_bp(64);
        let map = RobpPoMap::new(bp, 8).unwrap();
        let mut rng = rng_from_seed(2);
        let member = pair_equality_input(64, 0, &mut rng);
        let proof = map.honest_proof(&member).unwrap();
        assert_eq!(map.rejection_probability(&member, &proof), 0.0);
        let far = pair_equality_input(64, 8, &mut rng);
        assert_eq!(map.dec.bp.distance(&far), 1.0 / 8.0);
        // the all-accepting boundary claim is the strongest cheating proof
        let proof = map.dec.encode_states(&[0; 8]);
        assert!(map.rejection_probability(&far, &proof) >= map.detection(1.0 / 8.0));
    }
}
