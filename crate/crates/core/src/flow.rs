//! Maximum flow with exact rational capacities (Edmonds–Karp).

use std::collections::VecDeque;

use num::{Signed, Zero};

use crate::weights::Weight;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: Weight,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: Weight) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: Weight::zero(),
        });
    }

    /// Pushes a maximum flow and returns its value together with the source
    /// side of a minimum cut.
    pub(crate) fn min_cut(&mut self, source: usize, sink: usize) -> (Weight, Vec<bool>) {
        let mut total = Weight::zero();
        loop {
            let (parent, reached) = self.bfs(source);
            if !reached[sink] {
                return (total, reached);
            }
            let mut bottleneck: Option<Weight> = None;
            let mut v = sink;
            while v != source {
                let arc = parent[v].expect("on augmenting path");
                let cap = &self.arcs[arc].cap;
                if bottleneck.as_ref().map_or(true, |b| cap < b) {
                    bottleneck = Some(cap.clone());
                }
                v = self.arcs[arc ^ 1].to;
            }
            let push = bottleneck.expect("nonempty path");
            let mut v = sink;
            while v != source {
                let arc = parent[v].expect("on augmenting path");
                self.arcs[arc].cap -= &push;
                self.arcs[arc ^ 1].cap += &push;
                v = self.arcs[arc ^ 1].to;
            }
            total += push;
        }
    }

    fn bfs(&self, source: usize) -> (Vec<Option<usize>>, Vec<bool>) {
        let n = self.out.len();
        let mut parent = vec![None; n];
        let mut reached = vec![false; n];
        reached[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.out[u] {
                let arc = &self.arcs[id];
                if arc.cap.is_positive() && !reached[arc.to] {
                    reached[arc.to] = true;
                    parent[arc.to] = Some(id);
                    queue.push_back(arc.to);
                }
            }
        }
        (parent, reached)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: i64) -> Weight {
        Weight::from_integer(x.into())
    }

    #[test]
    fn diamond() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, w(3));
        net.add_arc(0, 2, w(2));
        net.add_arc(1, 2, w(1));
        net.add_arc(1, 3, w(2));
        net.add_arc(2, 3, w(3));
        let (value, side) = net.min_cut(0, 3);
        assert_eq!(value, w(5));
        assert!(side[0] && !side[3]);
    }

    #[test]
    fn fractional_capacities() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, Weight::new(1.into(), 3.into()));
        net.add_arc(1, 2, Weight::new(1.into(), 2.into()));
        let (value, side) = net.min_cut(0, 2);
        assert_eq!(value, Weight::new(1.into(), 3.into()));
        assert_eq!(side, vec![true, false, false]);
    }
}
