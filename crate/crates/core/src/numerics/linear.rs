//! Affine layer `y = W x + b` with exact vector-Jacobian products.

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;
use crate::numerics::rng::SeededRng;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearParams {
    pub weight: Matrix,
    pub bias: Vec<f64>,
}

impl LinearParams {
    pub fn zeros(in_dim: usize, out_dim: usize) -> Self {
        LinearParams {
            weight: Matrix::zeros(out_dim, in_dim),
            bias: vec![0.0; out_dim],
        }
    }

    /// Uniform(-s, s) with s = 1/sqrt(in_dim) for both weights and biases.
    pub fn init_uniform(in_dim: usize, out_dim: usize, rng: &mut SeededRng) -> Self {
        let s = 1.0 / (in_dim as f64).sqrt();
        let mut p = LinearParams::zeros(in_dim, out_dim);
        for w in p.weight.data_mut() {
            *w = rng.uniform(-s, s);
        }
        for b in &mut p.bias {
            *b = rng.uniform(-s, s);
        }
        p
    }

    pub fn in_dim(&self) -> usize {
        self.weight.cols()
    }

    pub fn out_dim(&self) -> usize {
        self.weight.rows()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = self.weight.matvec(x)?;
        for (yi, &bi) in y.iter_mut().zip(&self.bias) {
            *yi += bi;
        }
        Ok(y)
    }

    /// Gradients of `<cotangent, forward(x)>`: returns d/dx and accumulates
    /// d/dW, d/db into `grads`.
    pub fn vjp_accumulate(
        &self,
        x: &[f64],
        cotangent: &[f64],
        grads: &mut LinearParams,
    ) -> Result<Vec<f64>> {
        if cotangent.len() != self.out_dim() {
            return Err(Error::invalid_argument(format!(
                "linear vjp: cotangent length {} does not match out dim {}",
                cotangent.len(),
                self.out_dim()
            )));
        }
        grads.weight.add_outer(1.0, cotangent, x)?;
        for (gb, &c) in grads.bias.iter_mut().zip(cotangent) {
            *gb += c;
        }
        self.weight.matvec_transpose(cotangent)
    }

    pub fn vjp(&self, x: &[f64], cotangent: &[f64]) -> Result<(Vec<f64>, LinearParams)> {
        let mut grads = LinearParams::zeros(self.in_dim(), self.out_dim());
        let dx = self.vjp_accumulate(x, cotangent, &mut grads)?;
        Ok((dx, grads))
    }

    pub fn add_scaled(&mut self, other: &LinearParams, scale: f64) {
        self.weight.add_scaled(&other.weight, scale);
        for (a, &b) in self.bias.iter_mut().zip(&other.bias) {
            *a += scale * b;
        }
    }

    pub fn param_count(&self) -> usize {
        self.weight.data().len() + self.bias.len()
    }
}
