use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use crate::formula::{render, Formula, Var};

/// Vertex of the variable graph: a variable, or one occurrence of the
/// constant `0` (each `x = 0` atom gets its own pendant vertex, so repeated
/// uses of the constant cannot fake a cycle through it).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Vertex {
    Var(Var),
    Const(usize),
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Vertex::Var(v) => write!(f, "{v}"),
            Vertex::Const(atom) => write!(f, "0@{atom}"),
        }
    }
}

/// Undirected edge, one per atom occurrence. Both endpoints of `x in x`
/// coincide: a self loop, and a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub atom_id: usize,
    pub label: String,
}

/// The variable (multi)graph of a formula: a vertex per variable plus a
/// pendant vertex per `= 0` occurrence, an edge per atom occurrence. The
/// formula counts as acyclic exactly when this graph is a forest, so
/// parallel edges (repeated atoms) and self loops both disqualify.
#[derive(Debug, Clone)]
pub struct VariableGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<GraphEdge>,
}

/// Spanning forest covering every edge: vertex `v` either is a root or hangs
/// off `parent[v] = (u, edge)`. Existence of such an assignment using every
/// edge exactly once is what acyclicity means here.
#[derive(Debug, Clone)]
pub struct Forest {
    pub parent: Vec<Option<(usize, usize)>>,
}

/// Closed walk with pairwise distinct edges: `vertices[0] == vertices[k]`
/// and `edges[i]` joins `vertices[i]` to `vertices[i+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl VariableGraph {
    pub fn from_formula(f: &Formula) -> VariableGraph {
        let mut vertices: Vec<Vertex> = f.all_vars().into_iter().map(Vertex::Var).collect();
        let vid: HashMap<Var, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Vertex::Var(name) => (name.clone(), i),
                Vertex::Const(_) => unreachable!(),
            })
            .collect();
        let mut edges = Vec::new();
        let mut atom_id = 0;
        f.walk_atoms(&mut |atom| {
            let id = atom_id;
            atom_id += 1;
            let label = render(atom);
            match atom {
                Formula::Mem(x, y) | Formula::Eq(x, y) => edges.push(GraphEdge {
                    a: vid[x],
                    b: vid[y],
                    atom_id: id,
                    label,
                }),
                Formula::EqConst(x, _) => {
                    let c = vertices.len();
                    vertices.push(Vertex::Const(id));
                    edges.push(GraphEdge {
                        a: vid[x],
                        b: c,
                        atom_id: id,
                        label,
                    });
                }
                _ => unreachable!("walk_atoms yields atoms only"),
            }
        });
        VariableGraph { vertices, edges }
    }

    /// Either a spanning forest using every edge, or a closed walk showing a
    /// cycle. Both outcomes replay against the graph via their `verify`.
    pub fn check_acyclic(&self) -> Result<Forest, CycleWitness> {
        let n = self.vertices.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut Vec<usize>, v: usize) -> usize {
            if comp[v] != v {
                comp[v] = find(comp, comp[v]);
            }
            comp[v]
        }
        // Adjacency over the edges accepted so far, for path recovery.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            let (ra, rb) = (find(&mut comp, e.a), find(&mut comp, e.b));
            if ra == rb {
                return Err(self.close_walk(&adj, e.a, e.b, k));
            }
            comp[ra] = rb;
            adj[e.a].push((e.b, k));
            adj[e.b].push((e.a, k));
        }
        // Cycle-free; orient every edge away from per-component BFS roots.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, k) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((u, k));
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(Forest { parent })
    }

    /// BFS path from `a` to `b` over `adj`, closed by edge `closing`.
    fn close_walk(
        &self,
        adj: &[Vec<(usize, usize)>],
        a: usize,
        b: usize,
        closing: usize,
    ) -> CycleWitness {
        if a == b {
            return CycleWitness {
                vertices: vec![a, a],
                edges: vec![closing],
            };
        }
        let n = self.vertices.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            for &(w, k) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, k));
                    queue.push_back(w);
                }
            }
        }
        let mut vertices = vec![b];
        let mut edges = Vec::new();
        let mut at = b;
        while at != a {
            let (u, k) = prev[at].expect("endpoints share a component");
            vertices.push(u);
            edges.push(k);
            at = u;
        }
        vertices.reverse();
        edges.reverse();
        // Close the walk back to its start through the rejected edge.
        vertices.push(a);
        edges.push(closing);
        CycleWitness { vertices, edges }
    }

    /// Graphviz source: an undirected multigraph, vertices and edges in
    /// their stored (first-occurrence) order, so output is deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            match v {
                Vertex::Var(name) => {
                    let _ = writeln!(out, "  v{i} [label=\"{name}\"];");
                }
                Vertex::Const(atom) => {
                    let _ = writeln!(out, "  v{i} [label=\"0 (atom {atom})\", shape=box];");
                }
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.a, e.b, e.label);
        }
        out.push_str("}\n");
        out
    }
}

impl Forest {
    /// Every edge of the graph appears exactly once as a parent link, every
    /// parent link is a real edge, and following parents always terminates.
    pub fn verify(&self, g: &VariableGraph) -> bool {
        let n = g.vertices.len();
        if self.parent.len() != n {
            return false;
        }
        let mut used = vec![false; g.edges.len()];
        for (v, link) in self.parent.iter().enumerate() {
            if let Some((u, k)) = *link {
                let Some(e) = g.edges.get(k) else {
                    return false;
                };
                let connects = (e.a == v && e.b == u) || (e.a == u && e.b == v);
                if !connects || used[k] {
                    return false;
                }
                used[k] = true;
            }
        }
        if !used.iter().all(|&u| u) {
            return false;
        }
        // Parent chains must reach a root within n steps.
        for mut v in 0..n {
            let mut hops = 0;
            while let Some((u, _)) = self.parent[v] {
                v = u;
                hops += 1;
                if hops > n {
                    return false;
                }
            }
        }
        true
    }
}

impl CycleWitness {
    pub fn verify(&self, g: &VariableGraph) -> bool {
        let k = self.edges.len();
        if k == 0 || self.vertices.len() != k + 1 || self.vertices[0] != self.vertices[k] {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for i in 0..k {
            let Some(e) = g.edges.get(self.edges[i]) else {
                return false;
            };
            if !seen.insert(self.edges[i]) {
                return false;
            }
            let (u, w) = (self.vertices[i], self.vertices[i + 1]);
            if !((e.a == u && e.b == w) || (e.a == w && e.b == u)) {
                return false;
            }
        }
        true
    }
}

/// Convenience wrapper building the graph and checking it in one step.
pub fn check_acyclic(f: &Formula) -> Result<Forest, CycleWitness> {
    VariableGraph::from_formula(f).check_acyclic()
}
