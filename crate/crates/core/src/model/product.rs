use super::{ModelError, ModelGraph, SignalModel};
use crate::linalg::{kron, to_complex, CMatrix, RMatrix};

/// Separable m-D model `C[x_1]/p_1 ⊗ … ⊗ C[x_m]/p_m`, stored as its 1-D factors.
#[derive(Clone, Debug)]
pub struct ProductModel {
    pub factors: Vec<SignalModel>,
}

impl ProductModel {
    pub fn new(factors: Vec<SignalModel>) -> Self {
        Self { factors }
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(SignalModel::n).product()
    }

    /// `I ⊗ … ⊗ φ_i(x_i) ⊗ … ⊗ I` for the `i`-th generator.
    pub fn shift_matrix(&self, axis: usize) -> Result<RMatrix, ModelError> {
        let mut out = RMatrix::identity(1, 1);
        for (i, factor) in self.factors.iter().enumerate() {
            let block = if i == axis {
                factor.shift_matrix()?
            } else {
                RMatrix::identity(factor.n(), factor.n())
            };
            out = out.kronecker(&block);
        }
        Ok(out)
    }

    pub fn shift_matrices(&self) -> Result<Vec<RMatrix>, ModelError> {
        (0..self.factors.len())
            .map(|i| self.shift_matrix(i))
            .collect()
    }

    /// Tensor product of the factors' polynomial transforms.
    pub fn polynomial_transform(&self) -> Result<CMatrix, ModelError> {
        let mut out = to_complex(&RMatrix::identity(1, 1));
        for factor in &self.factors {
            out = kron(&out, &factor.polynomial_transform()?);
        }
        Ok(out)
    }

    /// Graph with adjacency equal to the sum of all shift matrices.
    pub fn visualize(&self) -> Result<ModelGraph, ModelError> {
        let n = self.dimension();
        let mut adjacency = RMatrix::zeros(n, n);
        for a in self.shift_matrices()? {
            adjacency += a;
        }
        let name = self
            .factors
            .iter()
            .map(|f| f.name.as_str())
            .collect::<Vec<_>>()
            .join(" x ");
        Ok(ModelGraph::new(&name, adjacency))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelCatalog;
    use crate::transforms::Dtt;

    #[test]
    fn grid_graph_is_direct_product() {
        let m = ModelCatalog::dtt(Dtt::dct(2), 3).unwrap();
        let product = ProductModel::new(vec![m.clone(), m.clone()]);
        let g = product.visualize().unwrap();
        let one = m.visualize().unwrap();
        assert_eq!(g.adjacency, one.direct_product(&one).adjacency);
        assert_eq!(g.vertex_count(), 9);
    }
}
