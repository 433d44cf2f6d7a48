//! Integral receiver-to-candidate assignment via min-cost flow.
//!
//! Maximization is turned into min-cost flow by negating weights. Every
//! receiver ships one unit; an `Exact(k)` column must receive exactly `k`
//! units and an `AtMost(k)` column at most `k`. The `AtMost` slack is
//! realized by a dummy supply node that can fill `AtMost` columns up to
//! their caps at zero cost, which makes the problem a balanced flow of value
//! `sum of all column caps`. All capacities are integral, and successive
//! shortest-path augmentations preserve integral flow, so the returned
//! assignment is exactly integral by construction.

use crate::{Error, Result};

/// Column requirement for one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnBound {
    Exact(usize),
    AtMost(usize),
}

impl ColumnBound {
    fn cap(self) -> usize {
        match self {
            ColumnBound::Exact(k) | ColumnBound::AtMost(k) => k,
        }
    }
}

/// Assign each receiver (unit row sum) to one candidate subject to column
/// bounds, maximizing `sum_r w[r][assignment[r]]`.
#[derive(Debug, Clone)]
pub struct TransportationProblem {
    /// `weights[r][c]`.
    pub weights: Vec<Vec<f64>>,
    /// One bound per candidate column.
    pub columns: Vec<ColumnBound>,
}

#[derive(Debug, Clone)]
pub struct TransportationSolution {
    /// `assignment[r]` is the candidate receiver `r` is assigned to.
    pub assignment: Vec<usize>,
    pub value: f64,
}

struct FlowEdge {
    to: usize,
    cap: i64,
    cost: f64,
}

struct FlowNet {
    edges: Vec<FlowEdge>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Adds edge and its residual twin (paired indices `e` and `e ^ 1`).
    fn add(&mut self, from: usize, to: usize, cap: i64, cost: f64) -> usize {
        let e = self.edges.len();
        self.edges.push(FlowEdge { to, cap, cost });
        self.edges.push(FlowEdge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adj[from].push(e);
        self.adj[to].push(e + 1);
        e
    }

    /// Bellman-Ford shortest path on the residual network (costs may be
    /// negative; the initial network is acyclic and shortest-path
    /// augmentation keeps the residual free of negative cycles).
    fn shortest_path(&self, source: usize, sink: usize) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent_edge = vec![usize::MAX; n];
        dist[source] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for (u, edges) in self.adj.iter().enumerate() {
                if dist[u].is_infinite() {
                    continue;
                }
                for &e in edges {
                    let edge = &self.edges[e];
                    if edge.cap <= 0 {
                        continue;
                    }
                    let nd = dist[u] + edge.cost;
                    if nd + 1e-12 < dist[edge.to] {
                        dist[edge.to] = nd;
                        parent_edge[edge.to] = e;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[sink].is_infinite() {
            return None;
        }
        let mut path = Vec::new();
        let mut v = sink;
        while v != source {
            let e = parent_edge[v];
            path.push(e);
            v = self.edges[e ^ 1].to;
        }
        path.reverse();
        Some(path)
    }
}

/// Solves the transportation problem; errors with [`Error::Infeasible`] when
/// the column requirements cannot be met.
pub fn solve_transportation(t: &TransportationProblem) -> Result<TransportationSolution> {
    let num_receivers = t.weights.len();
    let num_cols = t.columns.len();
    if num_receivers == 0 {
        return Err(Error::BadParameter("no receivers".to_string()));
    }
    if t.weights.iter().any(|row| row.len() != num_cols) {
        return Err(Error::DimensionMismatch(
            "weight rows must match the number of columns".to_string(),
        ));
    }

    let sum_exact: usize = t
        .columns
        .iter()
        .map(|b| match b {
            ColumnBound::Exact(k) => *k,
            ColumnBound::AtMost(_) => 0,
        })
        .sum();
    let total_caps: usize = t.columns.iter().map(|b| b.cap()).sum();
    if sum_exact > num_receivers || total_caps < num_receivers {
        return Err(Error::Infeasible(format!(
            "column bounds require {sum_exact}..{total_caps} receivers, have {num_receivers}"
        )));
    }

    // Node layout: source, receivers, candidates, dummy supply, sink.
    let source = 0;
    let recv = |r: usize| 1 + r;
    let cand = |c: usize| 1 + num_receivers + c;
    let dummy = 1 + num_receivers + num_cols;
    let sink = dummy + 1;
    let mut net = FlowNet::new(sink + 1);

    let mut assign_edges = vec![vec![usize::MAX; num_cols]; num_receivers];
    for r in 0..num_receivers {
        net.add(source, recv(r), 1, 0.0);
        for c in 0..num_cols {
            assign_edges[r][c] = net.add(recv(r), cand(c), 1, -t.weights[r][c]);
        }
    }
    let dummy_supply = (total_caps - num_receivers) as i64;
    net.add(source, dummy, dummy_supply, 0.0);
    for (c, bound) in t.columns.iter().enumerate() {
        net.add(cand(c), sink, bound.cap() as i64, 0.0);
        if let ColumnBound::AtMost(k) = bound {
            net.add(dummy, cand(c), *k as i64, 0.0);
        }
    }

    let mut remaining = total_caps as i64;
    while remaining > 0 {
        let Some(path) = net.shortest_path(source, sink) else {
            return Err(Error::Infeasible(
                "column requirements cannot be met".to_string(),
            ));
        };
        let mut push = remaining;
        for &e in &path {
            push = push.min(net.edges[e].cap);
        }
        for &e in &path {
            net.edges[e].cap -= push;
            net.edges[e ^ 1].cap += push;
        }
        remaining -= push;
    }

    let mut assignment = vec![usize::MAX; num_receivers];
    let mut value = 0.0;
    for r in 0..num_receivers {
        for c in 0..num_cols {
            // A saturated unit edge has residual 0 and twin capacity 1.
            if net.edges[assign_edges[r][c] ^ 1].cap == 1 {
                assignment[r] = c;
                value += t.weights[r][c];
                break;
            }
        }
        if assignment[r] == usize::MAX {
            return Err(Error::Infeasible(
                "flow left a receiver unassigned".to_string(),
            ));
        }
    }
    Ok(TransportationSolution { assignment, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive assignment enumeration, the independent oracle for the flow
    /// solver on small instances.
    pub(crate) fn brute_force(t: &TransportationProblem) -> Option<(Vec<usize>, f64)> {
        let nr = t.weights.len();
        let nc = t.columns.len();
        let mut best: Option<(Vec<usize>, f64)> = None;
        let mut assignment = vec![0usize; nr];
        loop {
            let mut counts = vec![0usize; nc];
            for &c in &assignment {
                counts[c] += 1;
            }
            let feasible = t.columns.iter().enumerate().all(|(c, b)| match b {
                ColumnBound::Exact(k) => counts[c] == *k,
                ColumnBound::AtMost(k) => counts[c] <= *k,
            });
            if feasible {
                let value: f64 = assignment
                    .iter()
                    .enumerate()
                    .map(|(r, &c)| t.weights[r][c])
                    .sum();
                if best.as_ref().is_none_or(|(_, v)| value > *v) {
                    best = Some((assignment.clone(), value));
                }
            }
            if !crate::model::next_profile(&mut assignment, nc) {
                break;
            }
        }
        best
    }

    #[test]
    fn single_receiver_exact() {
        let t = TransportationProblem {
            weights: vec![vec![3.0, 7.0]],
            columns: vec![ColumnBound::Exact(1), ColumnBound::AtMost(1)],
        };
        let sol = solve_transportation(&t).unwrap();
        assert_eq!(sol.assignment, vec![0]);
        assert_eq!(sol.value, 3.0);
    }

    #[test]
    fn exact_column_forces_reassignment() {
        // Receiver 0 is the only one with value on c1; exactly two must take c0.
        let t = TransportationProblem {
            weights: vec![vec![0.0, 5.0], vec![0.0, 0.0], vec![0.0, 0.0]],
            columns: vec![ColumnBound::Exact(2), ColumnBound::AtMost(2)],
        };
        let sol = solve_transportation(&t).unwrap();
        assert_eq!(sol.assignment, vec![1, 0, 0]);
        assert_eq!(sol.value, 5.0);
        let (_, brute) = brute_force(&t).unwrap();
        assert_eq!(sol.value, brute);
    }

    #[test]
    fn infeasible_exact_requirements() {
        let t = TransportationProblem {
            weights: vec![vec![0.0, 0.0]; 3],
            columns: vec![ColumnBound::Exact(2), ColumnBound::Exact(2)],
        };
        assert!(matches!(
            solve_transportation(&t),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for trial in 0..300 {
            let nr = rng.gen_range(1..=6);
            let nc = rng.gen_range(1..=3);
            let weights: Vec<Vec<f64>> = (0..nr)
                .map(|_| (0..nc).map(|_| rng.gen_range(-5.0..5.0)).collect())
                .collect();
            let columns: Vec<ColumnBound> = (0..nc)
                .map(|_| {
                    let k = rng.gen_range(0..=nr);
                    if rng.gen_bool(0.5) {
                        ColumnBound::Exact(k)
                    } else {
                        ColumnBound::AtMost(k)
                    }
                })
                .collect();
            let t = TransportationProblem { weights, columns };
            let brute = brute_force(&t);
            match solve_transportation(&t) {
                Ok(sol) => {
                    let (_, best) = brute.unwrap_or_else(|| {
                        panic!("trial {trial}: flow found a solution, brute force none")
                    });
                    assert!(
                        (sol.value - best).abs() < 1e-9,
                        "trial {trial}: flow {} vs brute {best}",
                        sol.value
                    );
                    // Returned assignment must itself be feasible.
                    let mut counts = vec![0usize; t.columns.len()];
                    for &c in &sol.assignment {
                        counts[c] += 1;
                    }
                    for (c, b) in t.columns.iter().enumerate() {
                        match b {
                            ColumnBound::Exact(k) => assert_eq!(counts[c], *k),
                            ColumnBound::AtMost(k) => assert!(counts[c] <= *k),
                        }
                    }
                }
                Err(_) => assert!(brute.is_none(), "trial {trial}: flow infeasible, brute not"),
            }
        }
    }
}
