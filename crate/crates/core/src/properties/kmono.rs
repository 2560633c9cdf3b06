//! k-monotone Boolean functions on the line `[n]`.
//!
//! `f` is k-monotone when `0·f` (a zero prepended) changes value at most `k`
//! times. Positions are 1-based in specifications and 0-based in arrays.

use std::any::Any;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::oracle::ceil_log2;
use crate::protocol::{bits_of, value_of, Block, Decomposition, SubProperty, SubVerifier};
use crate::rng::TrialRng;

/// Number of value changes in `0·f`.
pub fn alternations(f: &[u8]) -> usize {
    let mut prev = 0u8;
    let mut count = 0;
    for &b in f {
        if b != prev {
            count += 1;
            prev = b;
        }
    }
    count
}

pub fn is_kmonotone(f: &[u8], k: usize) -> bool {
    alternations(f) <= k
}

/// Minimum Hamming distance from `f` to a k-monotone function, over `n`.
/// Dynamic programme over (position, current value, changes used).
pub fn distance_to_kmonotone(f: &[u8], k: usize) -> f64 {
    if f.is_empty() {
        return 0.0;
    }
    const INF: usize = usize::MAX / 2;
    // cost[v][c]: best cost so far ending in value v after c changes
    let mut cost = vec![[INF; 2]; k + 1];
    cost[0][0] = 0;
    // a virtual leading 0 has been placed
    for &b in f {
        let mut next = vec![[INF; 2]; k + 1];
        for c in 0..=k {
            for v in 0..2 {
                let cur = cost[c][v];
                if cur >= INF {
                    continue;
                }
                for g in 0..2usize {
                    let nc = if g != v { c + 1 } else { c };
                    if nc > k {
                        continue;
                    }
                    let add = (g as u8 != b) as usize;
                    next[nc][g] = next[nc][g].min(cur + add);
                }
            }
        }
        cost = next;
    }
    let best = cost.iter().flat_map(|r| r.iter()).min().copied().unwrap();
    best as f64 / f.len() as f64
}

/// Distance from `bits` to the nearest nondecreasing string (`0^a 1^b`), in
/// flips.
pub fn flips_to_nondecreasing(bits: &[u8]) -> usize {
    let zeros_total = bits.iter().filter(|&&b| b == 0).count();
    // split before position t: ones in [0,t) flipped, zeros in [t,m) flipped
    let mut best = zeros_total;
    let (mut ones_before, mut zeros_before) = (0, 0);
    for &b in bits {
        if b == 1 {
            ones_before += 1;
        } else {
            zeros_before += 1;
        }
        best = best.min(ones_before + zeros_total - zeros_before);
    }
    best
}

/// A nondecreasing or nonincreasing line, optionally with its first and
/// last values pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneLine {
    pub nondecreasing: bool,
    pub first: Option<u8>,
    pub last: Option<u8>,
}

impl MonotoneLine {
    pub fn free(nondecreasing: bool) -> Self {
        Self {
            nondecreasing,
            first: None,
            last: None,
        }
    }

    /// The block in nondecreasing orientation.
    pub fn oriented(&self, block: &[u8]) -> Vec<u8> {
        if self.nondecreasing {
            block.to_vec()
        } else {
            block.iter().map(|&b| 1 - b).collect()
        }
    }

    fn orient_bit(&self, b: u8) -> u8 {
        if self.nondecreasing {
            b
        } else {
            1 - b
        }
    }

    /// Whether the pins hold on `block`.
    pub fn pins_hold(&self, block: &[u8]) -> bool {
        let (Some(&a), Some(&z)) = (block.first(), block.last()) else {
            return true;
        };
        self.first.map_or(true, |v| v == a) && self.last.map_or(true, |v| v == z)
    }

    /// Fewest flips to a pinned monotone string; `None` when the pins
    /// contradict the direction.
    pub fn flips(&self, block: &[u8]) -> Option<usize> {
        let o = self.oriented(block);
        let m = o.len();
        if m == 0 {
            return Some(0);
        }
        let first = self.first.map(|v| self.orient_bit(v));
        let last = self.last.map(|v| self.orient_bit(v));
        let ones_total = o.iter().filter(|&&b| b == 1).count();
        // target 0^t 1^(m-t)
        let mut best: Option<usize> = None;
        let mut ones_before = 0;
        for t in 0..=m {
            if t > 0 && o[t - 1] == 1 {
                ones_before += 1;
            }
            let g0 = (t == 0) as u8;
            let g1 = (t < m) as u8;
            if first.map_or(false, |v| v != g0) || last.map_or(false, |v| v != g1) {
                continue;
            }
            let zeros_after = (m - t) - (ones_total - ones_before);
            let c = ones_before + zeros_after;
            best = Some(best.map_or(c, |b: usize| b.min(c)));
        }
        best
    }
}

impl SubProperty for MonotoneLine {
    fn contains(&self, block: &[u8]) -> bool {
        let o = self.oriented(block);
        o.windows(2).all(|w| w[0] <= w[1]) && self.pins_hold(block)
    }

    fn distance(&self, block: &[u8]) -> f64 {
        if block.is_empty() {
            return 0.0;
        }
        match self.flips(block) {
            Some(f) => f as f64 / block.len() as f64,
            None => 1.0,
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Critical points `1 ≤ n_1 < … < n_ℓ < n`, `ℓ ≤ k − 1`, and the pinned
/// values at padding splits, in the order the splits are made.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KMonotoneSpec {
    pub points: Vec<usize>,
    pub pins: Vec<u8>,
}

/// Padded intervals and the split points padding introduced, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Padding {
    pub intervals: Vec<Interval>,
    pub splits: Vec<usize>,
}

/// A closed interval `[start, end]` (1-based) with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub nondecreasing: bool,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone)]
pub struct KMonoDecomposition {
    n: usize,
    k: usize,
    slot_bits: usize,
}

pub fn kmonotone_decomposition(n: usize, k: usize) -> KMonoDecomposition {
    assert!(n >= 1 && k >= 1);
    KMonoDecomposition {
        n,
        k,
        slot_bits: ceil_log2(n as u64).max(1) as usize,
    }
}

impl KMonoDecomposition {
    /// Blocks of `spec`, padded to `k` by midpoint splitting.
    pub fn intervals(&self, spec: &KMonotoneSpec) -> Result<Vec<Interval>> {
        Ok(self.padding(spec)?.intervals)
    }

    /// Like [`Self::intervals`], also reporting the split points.
    pub fn padding(&self, spec: &KMonotoneSpec) -> Result<Padding> {
        let p = &spec.points;
        if p.len() > self.k - 1 {
            return Err(Error::Config(format!(
                "{} critical points exceed k - 1 = {}",
                p.len(),
                self.k - 1
            )));
        }
        if p.iter().any(|&v| v < 1 || v >= self.n) || p.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "critical points {p:?} are not strictly increasing within [1, {})",
                self.n
            )));
        }
        let mut bounds = vec![1];
        bounds.extend_from_slice(p);
        bounds.push(self.n);
        let mut out: Vec<Interval> = bounds
            .windows(2)
            .enumerate()
            .map(|(i, w)| Interval {
                start: w[0],
                end: w[1],
                nondecreasing: i % 2 == 0,
            })
            .collect();
        let mut splits = Vec::new();
        while out.len() < self.k {
            let mut best: Option<usize> = None;
            for (i, iv) in out.iter().enumerate() {
                if iv.len() >= 3 && best.map_or(true, |b| iv.len() > out[b].len()) {
                    best = Some(i);
                }
            }
            let Some(i) = best else { break };
            let iv = out[i];
            let mid = (iv.start + iv.end) / 2;
            splits.push(mid);
            out[i].end = mid;
            out.insert(
                i + 1,
                Interval {
                    start: mid,
                    end: iv.end,
                    nondecreasing: iv.nondecreasing,
                },
            );
        }
        Ok(Padding { intervals: out, splits })
    }

    /// Slot `j` holds critical point `j` when `j < ℓ`, else zero; its
    /// trailing bit is the pin of split `j − ℓ` (zero when unused).
    pub fn encode(&self, spec: &KMonotoneSpec) -> Vec<u8> {
        let mut y = Vec::with_capacity(self.spec_bits());
        let l = spec.points.len();
        for slot in 0..self.k - 1 {
            let v = spec.points.get(slot).copied().unwrap_or(0) as u64;
            y.extend(bits_of(v, self.slot_bits));
            let pin = if slot >= l { spec.pins.get(slot - l).copied().unwrap_or(0) } else { 0 };
            y.push(pin);
        }
        y
    }

    /// Inverse of [`Self::encode`]; `None` for strings outside `S`.
    pub fn decode(&self, y: &[u8]) -> Option<KMonotoneSpec> {
        if y.len() != self.spec_bits() || y.iter().any(|&b| b > 1) {
            return None;
        }
        let slots: Vec<(usize, u8)> = y
            .chunks(self.slot_bits + 1)
            .map(|c| (value_of(&c[..self.slot_bits]) as usize, c[self.slot_bits]))
            .collect();
        let used = slots.iter().take_while(|s| s.0 != 0).count();
        if slots[used..].iter().any(|s| s.0 != 0) || slots[..used].iter().any(|s| s.1 != 0) {
            return None;
        }
        let mut spec = KMonotoneSpec {
            points: slots[..used].iter().map(|s| s.0).collect(),
            pins: Vec::new(),
        };
        let splits = self.padding(&spec).ok()?.splits.len();
        let pins: Vec<u8> = slots[used..].iter().map(|s| s.1).collect();
        if pins[splits..].iter().any(|&b| b != 0) {
            return None;
        }
        spec.pins = pins[..splits].to_vec();
        // pins that no monotone block can meet are outside S
        let feasible = self
            .lines(&spec)?
            .iter()
            .all(|(iv, line)| line.flips(&vec![0; iv.len()]).is_some());
        feasible.then_some(spec)
    }

    fn lines(&self, spec: &KMonotoneSpec) -> Option<Vec<(Interval, MonotoneLine)>> {
        let pad = self.padding(spec).ok()?;
        let pin = |p: usize| pad.splits.iter().position(|&s| s == p).map(|j| spec.pins[j]);
        Some(
            pad.intervals
                .iter()
                .map(|&iv| {
                    let line = MonotoneLine {
                        nondecreasing: iv.nondecreasing,
                        first: pin(iv.start),
                        last: pin(iv.end),
                    };
                    (iv, line)
                })
                .collect(),
        )
    }

    /// The spec pinning each split of `points` to the value `x` has there.
    pub fn spec_for(&self, x: &[u8], points: Vec<usize>) -> Option<KMonotoneSpec> {
        let mut spec = KMonotoneSpec { points, pins: Vec::new() };
        spec.pins = self.padding(&spec).ok()?.splits.iter().map(|&p| x[p - 1]).collect();
        Some(spec)
    }

    /// Greedy critical points: one at each change against the current
    /// direction.
    pub fn critical_points(f: &[u8]) -> Vec<usize> {
        let mut up = true;
        let mut pts = Vec::new();
        for p in 0..f.len().saturating_sub(1) {
            let against = if up { f[p] == 1 && f[p + 1] == 0 } else { f[p] == 0 && f[p + 1] == 1 };
            if against {
                pts.push(p + 1);
                up = !up;
            }
        }
        // a leading 1 still starts in the nondecreasing block
        pts
    }
}

impl Decomposition for KMonoDecomposition {
    fn name(&self) -> &str {
        "kmono"
    }

    fn n(&self) -> usize {
        self.n
    }

    fn k(&self) -> usize {
        self.k
    }

    fn spec_bits(&self) -> usize {
        (self.k - 1) * (self.slot_bits + 1)
    }

    fn c_dec(&self) -> f64 {
        0.5
    }

    fn blocks(&self, y: &[u8]) -> Option<Vec<Block>> {
        let spec = self.decode(y)?;
        Some(
            self.lines(&spec)?
                .into_iter()
                .map(|(iv, line)| Block {
                    coords: (iv.start - 1..iv.end).collect(),
                    property: Arc::new(line),
                })
                .collect(),
        )
    }

    fn honest_spec(&self, x: &[u8]) -> Option<Vec<u8>> {
        let points = Self::critical_points(x);
        if points.len() > self.k - 1 {
            return None;
        }
        Some(self.encode(&self.spec_for(x, points)?))
    }

    fn contains(&self, x: &[u8]) -> bool {
        is_kmonotone(x, self.k)
    }

    fn distance(&self, x: &[u8]) -> f64 {
        distance_to_kmonotone(x, self.k)
    }
}

/// Sorted-sample violation search: `⌈c_mono/δ⌉` uniform indices plus both
/// endpoints; reject iff a pin fails or a read pair `i < j` violates the
/// block's direction.
#[derive(Debug, Clone, Copy)]
pub struct MonotoneLineTester {
    pub c_mono: f64,
}

impl MonotoneLineTester {
    pub fn samples(&self, delta: f64) -> usize {
        (self.c_mono / delta - 1e-9).ceil().max(1.0) as usize
    }

    /// Exact probability of acceptance on `bits` with `t` samples.
    pub fn accept_probability(line: &MonotoneLine, bits: &[u8], t: usize) -> f64 {
        if bits.is_empty() {
            return 1.0;
        }
        if !line.pins_hold(bits) {
            return 0.0;
        }
        let o = line.oriented(bits);
        let m = o.len() as f64;
        let ones = o.iter().filter(|&&b| b == 1).count() as f64;
        match (o[0], o[o.len() - 1]) {
            (1, 0) => 0.0,
            (1, _) => (ones / m).powi(t as i32),
            (_, 0) => ((m - ones) / m).powi(t as i32),
            _ => Self::no_violation_probability(&o, t),
        }
    }

    /// Exact probability that `t` samples from nondecreasing-oriented
    /// `bits` contain no violating pair.
    pub fn no_violation_probability(bits: &[u8], t: usize) -> f64 {
        let m = bits.len() as f64;
        if bits.is_empty() {
            return 1.0;
        }
        let ones_total = bits.iter().filter(|&&b| b == 1).count();
        let t = t as i32;
        // no zero sampled at all
        let mut p = (ones_total as f64 / m).powi(t);
        let (mut zeros_le, mut ones_le) = (0usize, 0usize);
        for &b in bits {
            if b == 1 {
                ones_le += 1;
                continue;
            }
            zeros_le += 1;
            // last sampled zero at this position; everything else in
            // {zeros ≤ p} ∪ {ones > p}
            let a = (zeros_le + ones_total - ones_le) as f64;
            p += (a / m).powi(t) - ((a - 1.0) / m).powi(t);
        }
        p.clamp(0.0, 1.0)
    }

    fn has_violation(oriented: &[u8], idx: &mut [usize]) -> bool {
        idx.sort_unstable();
        let mut seen_one = false;
        for &i in idx.iter() {
            if oriented[i] == 1 {
                seen_one = true;
            } else if seen_one {
                return true;
            }
        }
        false
    }
}

fn line_of(block: &Block) -> MonotoneLine {
    *block
        .property
        .as_any()
        .downcast_ref::<MonotoneLine>()
        .expect("line tester needs a MonotoneLine block")
}

impl SubVerifier for MonotoneLineTester {
    fn name(&self) -> &str {
        "monotone-line"
    }

    fn exponents(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn proof_bits(&self, _blocks: &[Block]) -> usize {
        0
    }

    fn queries(&self, m: usize, delta: f64) -> u64 {
        self.samples(delta) as u64 + m.min(2) as u64
    }

    fn rejection_probability(&self, block: &Block, bits: &[u8], _proof: &[u8], delta: f64) -> f64 {
        1.0 - Self::accept_probability(&line_of(block), bits, self.samples(delta))
    }

    fn measured_run(
        &self,
        block: &Block,
        bits: &[u8],
        _proof: &[u8],
        delta: f64,
        reject: bool,
        rng: &mut TrialRng,
        read: &mut dyn FnMut(usize) -> u8,
    ) {
        let line = line_of(block);
        let o = line.oriented(bits);
        let t = self.samples(delta);
        let m = bits.len();
        if m == 0 {
            return;
        }
        let pins_fail = !line.pins_hold(bits);
        let mut idx: Vec<usize> = Vec::with_capacity(t + 2);
        // Rejection sampling toward the measured outcome. The read count is
        // fixed, so a budget miss changes only which positions are read.
        for _ in 0..256 {
            idx.clear();
            idx.extend((0..t).map(|_| rng.gen_range(0..m)));
            idx.push(0);
            if m > 1 {
                idx.push(m - 1);
            }
            if (pins_fail || Self::has_violation(&o, &mut idx)) == reject {
                break;
            }
        }
        for &i in &idx {
            read(i);
        }
    }
}

/// Smallest striped prefix (`1^w 0^w` repeated, then zeros) on `[n]` whose
/// distance to k-monotone is at least `eps`. Returns the input and its exact
/// distance.
pub fn far_kmonotone_input(n: usize, k: usize, eps: f64, stripe: usize) -> Option<(Vec<u8>, f64)> {
    let period = 2 * stripe;
    let build = |periods: usize| -> Vec<u8> {
        (0..n)
            .map(|i| {
                if i < periods * period {
                    ((i % period) < stripe) as u8
                } else {
                    0
                }
            })
            .collect()
    };
    let max_periods = n / period;
    // distance is nondecreasing in the number of periods
    let (mut lo, mut hi) = (0usize, max_periods);
    if distance_to_kmonotone(&build(hi), k) < eps {
        return None;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if distance_to_kmonotone(&build(mid), k) >= eps {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let f = build(lo);
    let d = distance_to_kmonotone(&f, k);
    Some((f, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    /// Minimum distance by enumerating every g on [n].
    fn brute_distance(f: &[u8], k: usize) -> f64 {
        let n = f.len();
        (0u64..1 << n)
            .map(|v| bits_of(v, n))
            .filter(|g| is_kmonotone(g, k))
            .map(|g| g.iter().zip(f).filter(|(a, b)| a != b).count())
            .min()
            .unwrap() as f64
            / n as f64
    }

    #[test]
    fn dp_distance_examples() {
        assert_eq!(distance_to_kmonotone(&[0, 1, 0, 1], 1), 0.25);
        let f: Vec<u8> = (0..16).map(|i| (i % 2) as u8).collect();
        assert_eq!(distance_to_kmonotone(&f, 1), 7.0 / 16.0);
        assert_eq!(brute_distance(&f, 1), 7.0 / 16.0);
        assert_eq!(distance_to_kmonotone(&[0, 0, 1, 1], 1), 0.0);
    }

    #[test]
    fn dp_matches_brute_force() {
        let mut rng = rng_from_seed(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=10);
            let k = rng.gen_range(1..=4);
            let f: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            assert_eq!(distance_to_kmonotone(&f, k), brute_distance(&f, k), "{f:?} k={k}");
        }
    }

    #[test]
    fn half_split_is_member_with_empty_spec() {
        let d = kmonotone_decomposition(8, 1);
        let f = [0, 0, 0, 0, 1, 1, 1, 1];
        assert!(d.contains(&f));
        let y = d.honest_spec(&f).unwrap();
        assert!(y.is_empty());
        let blocks = d.blocks(&y).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].property.contains(&blocks[0].extract(&f)));
    }

    #[test]
    fn leading_one_uses_point_at_one() {
        let d = kmonotone_decomposition(2, 2);
        let f = [1, 0];
        let y = d.honest_spec(&f).unwrap();
        assert_eq!(d.decode(&y).unwrap().points, vec![1]);
        assert!(d
            .blocks(&y)
            .unwrap()
            .iter()
            .all(|b| b.property.contains(&b.extract(&f))));
    }

    #[test]
    fn malformed_specs_are_errors() {
        let d = kmonotone_decomposition(10, 4);
        assert!(d.intervals(&KMonotoneSpec { points: vec![5, 3], ..Default::default() }).is_err());
        assert!(d.intervals(&KMonotoneSpec { points: vec![10], ..Default::default() }).is_err());
        assert!(d
            .intervals(&KMonotoneSpec {
                points: vec![2, 3, 4, 5],
                ..Default::default()
            })
            .is_err());
    }

    #[test]
    fn padding_reaches_k_blocks() {
        let d = kmonotone_decomposition(16, 4);
        let ivs = d.intervals(&KMonotoneSpec { points: vec![8], ..Default::default() }).unwrap();
        assert_eq!(ivs.len(), 4);
        assert_eq!(ivs[0], Interval { start: 1, end: 4, nondecreasing: true });
        assert_eq!(ivs[1], Interval { start: 4, end: 8, nondecreasing: true });
        assert!(ivs[2..].iter().all(|iv| !iv.nondecreasing));
        for w in ivs.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
    }

    #[test]
    fn exhaustive_spec_characterisation() {
        for n in 2..=9 {
            for k in 1..=4 {
                let d = kmonotone_decomposition(n, k);
                let specs = d.all_specs();
                for v in 0u64..1 << n {
                    let f = bits_of(v, n);
                    let via = specs.iter().any(|y| {
                        d.blocks(y)
                            .unwrap()
                            .iter()
                            .all(|b| b.property.contains(&b.extract(&f)))
                    });
                    assert_eq!(via, is_kmonotone(&f, k), "f={f:?} k={k}");
                }
            }
        }
    }

    fn brute_no_violation(bits: &[u8], t: usize) -> f64 {
        let m = bits.len();
        let total = m.pow(t as u32);
        let mut ok = 0;
        for code in 0..total {
            let mut idx: Vec<usize> = (0..t).map(|s| (code / m.pow(s as u32)) % m).collect();
            if !MonotoneLineTester::has_violation(bits, &mut idx) {
                ok += 1;
            }
        }
        ok as f64 / total as f64
    }

    #[test]
    fn exact_tester_probability_matches_enumeration() {
        for v in 0u64..1 << 5 {
            let bits = bits_of(v, 5);
            for t in 1..=4 {
                let a = MonotoneLineTester::no_violation_probability(&bits, t);
                let b = brute_no_violation(&bits, t);
                assert!((a - b).abs() < 1e-12, "{bits:?} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn tester_accepts_monotone_and_counts_queries() {
        let tester = MonotoneLineTester { c_mono: 8.0 };
        let block = Block {
            coords: (0..64).collect(),
            property: Arc::new(MonotoneLine::free(true)),
        };
        let bits: Vec<u8> = (0..64).map(|i| (i >= 20) as u8).collect();
        assert_eq!(tester.rejection_probability(&block, &bits, &[], 0.5), 0.0);
        let mut count = 0;
        tester.measured_run(&block, &bits, &[], 0.5, false, &mut rng_from_seed(1), &mut |_| {
            count += 1;
            0
        });
        assert_eq!(count, 18);
    }

    #[test]
    fn reversed_half_is_caught_at_half() {
        let tester = MonotoneLineTester { c_mono: 8.0 };
        let block = Block {
            coords: (0..64).collect(),
            property: Arc::new(MonotoneLine::free(true)),
        };
        let bits: Vec<u8> = (0..64).map(|i| (i < 32) as u8).collect();
        assert!(tester.rejection_probability(&block, &bits, &[], 0.5) >= 2.0 / 3.0);
    }

    #[test]
    fn pinned_distance_matches_enumeration() {
        let pins = [None, Some(0), Some(1)];
        for m in 1..=6 {
            for v in 0u64..1 << m {
                let bits = bits_of(v, m);
                for dir in [true, false] {
                    for first in pins {
                        for last in pins {
                            let line = MonotoneLine { nondecreasing: dir, first, last };
                            let best = (0u64..1 << m)
                                .map(|g| bits_of(g, m))
                                .filter(|g| line.contains(g))
                                .map(|g| g.iter().zip(&bits).filter(|(a, b)| a != b).count())
                                .min();
                            assert_eq!(line.flips(&bits), best, "{bits:?} {line:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pinned_tester_probability_matches_enumeration() {
        let m = 5;
        for v in 0u64..1 << m {
            let bits = bits_of(v, m);
            for first in [None, Some(0), Some(1)] {
                let line = MonotoneLine { nondecreasing: false, first, last: None };
                let o = line.oriented(&bits);
                for t in 1..=3 {
                    let total = m.pow(t as u32);
                    let ok = (0..total)
                        .filter(|code| {
                            let mut idx: Vec<usize> = (0..t).map(|s| (code / m.pow(s as u32)) % m).collect();
                            idx.extend([0, m - 1]);
                            line.pins_hold(&bits) && !MonotoneLineTester::has_violation(&o, &mut idx)
                        })
                        .count();
                    let a = MonotoneLineTester::accept_probability(&line, &bits, t);
                    assert!((a - ok as f64 / total as f64).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn pinned_splits_keep_the_distance() {
        // E[ε_i]·Σm_i ≥ εn for every spec at small n
        for n in 3..=9 {
            for k in 2..=3 {
                let d = kmonotone_decomposition(n, k);
                let specs = d.all_specs();
                for v in 0u64..1 << n {
                    let f = bits_of(v, n);
                    let dist = distance_to_kmonotone(&f, k) * n as f64;
                    for y in &specs {
                        let flips: f64 = d
                            .blocks(y)
                            .unwrap()
                            .iter()
                            .map(|b| b.property.distance(&b.extract(&f)) * b.len() as f64)
                            .sum();
                        assert!(flips >= dist - 1e-9, "f={f:?} k={k} y={y:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn far_generator_certifies_distance() {
        for &eps in &[0.25, 0.125, 1.0 / 32.0] {
            let (f, d) = far_kmonotone_input(256, 4, eps, 4).unwrap();
            assert!(d >= eps);
            assert_eq!(distance_to_kmonotone(&f, 4), d);
        }
    }
}
