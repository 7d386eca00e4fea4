use std::fmt::Write as _;

use crate::linalg::{is_symmetric, RMatrix};

/// Weighted graph whose adjacency matrix is a model's shift matrix.
///
/// An entry `A[i][j] ≠ 0` is an edge from vertex `i` to vertex `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelGraph {
    pub name: String,
    pub adjacency: RMatrix,
}

impl ModelGraph {
    pub fn new(name: &str, adjacency: RMatrix) -> Self {
        Self {
            name: name.to_string(),
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.nrows()
    }

    /// `(from, to, weight)` for every nonzero entry, row-major.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let w = self.adjacency[(i, j)];
                if w.abs() > 1e-12 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn is_undirected(&self) -> bool {
        is_symmetric(&self.adjacency, 1e-12)
    }

    /// Graph of the sum of the two shifts `A⊗I + I⊗B`, vertices numbered row-major.
    pub fn direct_product(&self, other: &ModelGraph) -> ModelGraph {
        let a = &self.adjacency;
        let b = &other.adjacency;
        let ia = RMatrix::identity(a.nrows(), a.nrows());
        let ib = RMatrix::identity(b.nrows(), b.nrows());
        ModelGraph::new(
            &format!("{}x{}", self.name, other.name),
            a.kronecker(&ib) + ia.kronecker(b),
        )
    }

    /// DOT text: `graph` with one edge per unordered pair when symmetric, `digraph` otherwise.
    pub fn to_dot(&self) -> String {
        let undirected = self.is_undirected();
        let (keyword, arrow) = if undirected {
            ("graph", "--")
        } else {
            ("digraph", "->")
        };
        let mut out = String::new();
        let _ = writeln!(out, "{keyword} \"{}\" {{", self.name.replace('"', "'"));
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j, w) in self.edges() {
            if undirected && j < i {
                continue;
            }
            let _ = writeln!(out, "  {i} {arrow} {j} [label=\"{}\"];", format_weight(w));
        }
        out.push_str("}\n");
        out
    }
}

/// Shortest decimal that round-trips, with common fractions written exactly.
fn format_weight(w: f64) -> String {
    for den in [1i64, 2, 3, 4, 8] {
        let num = w * den as f64;
        if (num - num.round()).abs() < 1e-12 {
            let num = num.round() as i64;
            return if den == 1 {
                num.to_string()
            } else {
                format!("{num}/{den}")
            };
        }
    }
    format!("{w}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_cycle_dot() {
        let mut a = RMatrix::zeros(3, 3);
        a[(1, 0)] = 1.0;
        a[(2, 1)] = 1.0;
        a[(0, 2)] = 0.5;
        let dot = ModelGraph::new("c3", a).to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("0 -> 2 [label=\"1/2\"]"));
        assert!(dot.contains("1 -> 0 [label=\"1\"]"));
    }

    #[test]
    fn symmetric_is_undirected() {
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0]);
        let g = ModelGraph::new("p2", a);
        let dot = g.to_dot();
        assert!(dot.starts_with("graph"));
        assert_eq!(dot.matches("--").count(), 1);
    }

    #[test]
    fn irrational_weight_falls_back_to_decimal() {
        assert_eq!(
            format_weight(std::f64::consts::SQRT_2),
            format!("{}", std::f64::consts::SQRT_2)
        );
        assert_eq!(format_weight(-1.5), "-3/2");
    }
}
