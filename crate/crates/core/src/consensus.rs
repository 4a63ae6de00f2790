//! Chain topologies and the four-phase PBFT latency.
//!
//! Pre-prepare, prepare and commit each wait for the slowest pairwise link
//! in the chain; reply waits for the slowest link back to the primary:
//!
//! ```text
//! T1 = T2 = T3 = max_{x ≠ y} t(x, y)
//! T4 = max_{x ≠ x0} t(x, x0)
//! ```
//!
//! Votes, quorums and faulty replicas are not modelled.

use std::ops::Add;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mode::Mode;

/// Smallest chain that tolerates one Byzantine node (3f + 1 with f = 1).
pub const MIN_NODES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Ground,
    Satellite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkType {
    InterGround,
    SatGround,
    InterSatellite,
}

/// Node roster of a chain deployed in one of the three modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeTopology {
    mode: Mode,
    kinds: Vec<NodeKind>,
    primary: usize,
}

/// Builds the roster for `mode` with `n` nodes.
///
/// In mode 2 the satellite is the last node and may not be the primary.
pub fn build_topology(mode: Mode, n: usize, primary_index: usize) -> Result<ModeTopology> {
    if n < MIN_NODES {
        return Err(Error::config(format!("a chain needs at least {MIN_NODES} nodes, got {n}")));
    }
    if primary_index >= n {
        return Err(Error::config(format!("primary index {primary_index} out of range for {n} nodes")));
    }
    let kinds = match mode {
        Mode::GroundChain => vec![NodeKind::Ground; n],
        Mode::SatelliteChain => vec![NodeKind::Satellite; n],
        Mode::SatelliteAssisted => {
            if primary_index == n - 1 {
                return Err(Error::config("in mode 2 the primary must be a ground node"));
            }
            let mut kinds = vec![NodeKind::Ground; n];
            kinds[n - 1] = NodeKind::Satellite;
            kinds
        }
    };
    Ok(ModeTopology { mode, kinds, primary: primary_index })
}

impl ModeTopology {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n_nodes(&self) -> usize {
        self.kinds.len()
    }

    pub fn node_kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn primary_index(&self) -> usize {
        self.primary
    }

    pub fn link_type(&self, a: usize, b: usize) -> LinkType {
        match (self.kinds[a], self.kinds[b]) {
            (NodeKind::Ground, NodeKind::Ground) => LinkType::InterGround,
            (NodeKind::Satellite, NodeKind::Satellite) => LinkType::InterSatellite,
            _ => LinkType::SatGround,
        }
    }

    /// Ground node that relays the chain's traffic to the satellite in
    /// mode 2: the lowest-indexed ground node other than the primary.
    pub fn representative(&self) -> Option<usize> {
        if self.mode != Mode::SatelliteAssisted {
            return None;
        }
        (0..self.n_nodes()).find(|&i| i != self.primary && self.kinds[i] == NodeKind::Ground)
    }

    /// Unordered node pairs `(i, j)` with `i < j`, in a fixed order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n_nodes();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

/// Pairwise link latencies; the diagonal is unused.
#[derive(Debug, Clone, PartialEq)]
pub struct LatencyMatrix<T> {
    n: usize,
    entries: Vec<Option<T>>,
}

impl<T: Copy> LatencyMatrix<T> {
    pub fn new(n: usize) -> Self {
        Self { n, entries: vec![None; n * n] }
    }

    /// Fills every off-diagonal entry from `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.entries[i * n + j] = Some(f(i, j));
                }
            }
        }
        m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, t: T) {
        self.entries[i * self.n + j] = Some(t);
        self.entries[j * self.n + i] = Some(t);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        self.entries[i * self.n + j]
    }
}

/// Latency of each PBFT phase and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLatencies<T> {
    pub t1_s: T,
    pub t2_s: T,
    pub t3_s: T,
    pub t4_s: T,
    pub total_s: T,
}

/// Four-phase consensus latency over the given link latencies.
pub fn pbft_overall_latency<T>(topology: &ModeTopology, links: &LatencyMatrix<T>) -> Result<PhaseLatencies<T>>
where
    T: Copy + PartialOrd + Add<Output = T> + Zero,
{
    let n = topology.n_nodes();
    if links.len() != n {
        return Err(Error::config(format!(
            "latency matrix is {0}x{0} but the topology has {n} nodes",
            links.len()
        )));
    }
    pbft_phase_latencies(links, topology.primary_index())
}

/// Phase maxima for any chain of two or more nodes, without a roster.
pub fn pbft_phase_latencies<T>(links: &LatencyMatrix<T>, primary: usize) -> Result<PhaseLatencies<T>>
where
    T: Copy + PartialOrd + Add<Output = T> + Zero,
{
    let n = links.len();
    if n < 2 || primary >= n {
        return Err(Error::config(format!(
            "need at least two nodes and a primary in range, got {n} nodes and primary {primary}"
        )));
    }
    let mut all_max: Option<T> = None;
    let mut reply_max: Option<T> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let t = links
                .get(i, j)
                .ok_or_else(|| Error::config(format!("missing link latency for pair ({i}, {j})")))?;
            if links.get(j, i).is_some_and(|u| u != t) {
                return Err(Error::config(format!("link latency matrix is not symmetric at ({i}, {j})")));
            }
            if !(t > T::zero()) {
                return Err(Error::config(format!("link latency for pair ({i}, {j}) must be positive")));
            }
            all_max = Some(max_of(all_max, t));
            if j == primary {
                reply_max = Some(max_of(reply_max, t));
            }
        }
    }
    let broadcast = all_max.expect("at least one pair");
    let reply = reply_max.expect("at least one pair");
    Ok(PhaseLatencies {
        t1_s: broadcast,
        t2_s: broadcast,
        t3_s: broadcast,
        t4_s: reply,
        total_s: broadcast + broadcast + broadcast + reply,
    })
}

fn max_of<T: Copy + PartialOrd>(acc: Option<T>, t: T) -> T {
    match acc {
        Some(m) if m >= t => m,
        _ => t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ground_chain_roster() {
        let t = build_topology(Mode::GroundChain, 5, 0).unwrap();
        assert_eq!(t.n_nodes(), 5);
        assert!(t.node_kinds().iter().all(|&k| k == NodeKind::Ground));
        assert!(t.pairs().all(|(i, j)| t.link_type(i, j) == LinkType::InterGround));
        assert_eq!(t.pairs().count(), 10);
        assert_eq!(t.representative(), None);
    }

    #[test]
    fn satellite_assisted_roster() {
        let t = build_topology(Mode::SatelliteAssisted, 6, 0).unwrap();
        assert_eq!(t.node_kinds().iter().filter(|&&k| k == NodeKind::Ground).count(), 5);
        assert_eq!(t.node_kinds()[5], NodeKind::Satellite);
        for (i, j) in t.pairs() {
            let expected = if j == 5 { LinkType::SatGround } else { LinkType::InterGround };
            assert_eq!(t.link_type(i, j), expected);
            assert_eq!(t.link_type(j, i), expected);
        }
        assert_eq!(t.representative(), Some(1));
        let t = build_topology(Mode::SatelliteAssisted, 6, 2).unwrap();
        assert_eq!(t.representative(), Some(0));
    }

    #[test]
    fn satellite_chain_roster() {
        let t = build_topology(Mode::SatelliteChain, 4, 2).unwrap();
        assert_eq!(t.primary_index(), 2);
        assert!(t.pairs().all(|(i, j)| t.link_type(i, j) == LinkType::InterSatellite));
    }

    #[test]
    fn roster_errors() {
        assert!(build_topology(Mode::GroundChain, 3, 0).is_err());
        assert!(build_topology(Mode::GroundChain, 5, 5).is_err());
        assert!(build_topology(Mode::SatelliteAssisted, 5, 4).is_err());
    }

    fn four_node(mut f: impl FnMut(usize, usize) -> u32) -> (ModeTopology, LatencyMatrix<u32>) {
        let topo = build_topology(Mode::GroundChain, 4, 0).unwrap();
        let mut m = LatencyMatrix::new(4);
        for (i, j) in topo.pairs() {
            m.set(i, j, f(i, j));
        }
        (topo, m)
    }

    #[test]
    fn uniform_links() {
        let (topo, m) = four_node(|_, _| 7);
        let p = pbft_overall_latency(&topo, &m).unwrap();
        assert_eq!(p.total_s, 28);
    }

    #[test]
    fn worked_example() {
        let mut m = LatencyMatrix::new(3);
        m.set(0, 1, 2);
        m.set(0, 2, 3);
        m.set(1, 2, 5);
        let p = pbft_phase_latencies(&m, 0).unwrap();
        assert_eq!((p.t1_s, p.t2_s, p.t3_s, p.t4_s), (5, 5, 5, 3));
        assert_eq!(p.total_s, 18);
        let tps = crate::analytic::throughput(p.total_s as f64).unwrap();
        assert!((tps - 1.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn matrix_errors() {
        let topo = build_topology(Mode::GroundChain, 4, 0).unwrap();
        let mut m = LatencyMatrix::new(4);
        m.set(0, 1, 1.0);
        assert!(matches!(pbft_overall_latency(&topo, &m), Err(Error::Config(_))));

        let mut m = LatencyMatrix::from_fn(4, |_, _| 1.0);
        m.entries[1] = Some(2.0);
        assert!(pbft_overall_latency(&topo, &m).is_err());

        let m = LatencyMatrix::from_fn(5, |_, _| 1.0);
        assert!(pbft_overall_latency(&topo, &m).is_err());

        let m = LatencyMatrix::from_fn(4, |_, _| 0.0);
        assert!(pbft_overall_latency(&topo, &m).is_err());
    }

    fn symmetric(n: usize, values: &[u32]) -> LatencyMatrix<u32> {
        let mut m = LatencyMatrix::new(n);
        let mut it = values.iter().cycle();
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, *it.next().unwrap());
            }
        }
        m
    }

    proptest! {
        #[test]
        fn raising_one_link_never_lowers_total(
            n in 4usize..8,
            values in proptest::collection::vec(1u32..100, 28),
            pick in 0usize..28,
            bump in 1u32..50,
            primary in 0usize..8,
        ) {
            let topo = build_topology(Mode::GroundChain, n, primary % n).unwrap();
            let m = symmetric(n, &values);
            let before = pbft_overall_latency(&topo, &m).unwrap().total_s;
            let pairs: Vec<_> = topo.pairs().collect();
            let (i, j) = pairs[pick % pairs.len()];
            let mut bumped = m.clone();
            bumped.set(i, j, m.get(i, j).unwrap() + bump);
            prop_assert!(pbft_overall_latency(&topo, &bumped).unwrap().total_s >= before);
        }

        #[test]
        fn adding_a_node_never_lowers_broadcast_phases(
            n in 4usize..8,
            values in proptest::collection::vec(1u32..100, 36),
        ) {
            let small = build_topology(Mode::SatelliteChain, n, 0).unwrap();
            let big = build_topology(Mode::SatelliteChain, n + 1, 0).unwrap();
            let m_big = symmetric(n + 1, &values);
            let m_small = LatencyMatrix::from_fn(n, |i, j| m_big.get(i, j).unwrap());
            let a = pbft_overall_latency(&small, &m_small).unwrap();
            let b = pbft_overall_latency(&big, &m_big).unwrap();
            prop_assert!(b.t1_s >= a.t1_s);
        }

        #[test]
        fn relabeling_preserves_total(
            n in 4usize..8,
            values in proptest::collection::vec(1u32..100, 28),
            primary in 0usize..8,
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let primary = primary % n;
            let m = symmetric(n, &values);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            // node i is renamed perm[i]
            let mut relabeled = LatencyMatrix::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    relabeled.set(perm[i], perm[j], m.get(i, j).unwrap());
                }
            }
            let a = pbft_overall_latency(&build_topology(Mode::GroundChain, n, primary).unwrap(), &m).unwrap();
            let b = pbft_overall_latency(
                &build_topology(Mode::GroundChain, n, perm[primary]).unwrap(),
                &relabeled,
            ).unwrap();
            prop_assert_eq!(a.total_s, b.total_s);
        }

        #[test]
        fn reciprocal_throughput(values in proptest::collection::vec(1e-6f64..10.0, 10)) {
            let topo = build_topology(Mode::GroundChain, 5, 0).unwrap();
            let mut m = LatencyMatrix::new(5);
            for ((i, j), v) in topo.pairs().zip(values) {
                m.set(i, j, v);
            }
            let total = pbft_overall_latency(&topo, &m).unwrap().total_s;
            let tps = crate::analytic::throughput(total).unwrap();
            prop_assert!((tps * total - 1.0).abs() < 1e-12);
        }
    }
}
