//! Multilayer perceptron with tanh hidden activations and identity output,
//! plus an exact vector-Jacobian product over inputs and parameters.

use crate::error::{Error, Result};
use crate::numerics::linear::LinearParams;
use crate::numerics::rng::SeededRng;

#[derive(Debug, Clone, PartialEq)]
pub struct MlpParams {
    dims: Vec<usize>,
    pub layers: Vec<LinearParams>,
}

impl MlpParams {
    /// `dims` chains input, hidden..., output, e.g. [64, 96, 128, 96, 64].
    pub fn zeros(dims: &[usize]) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::invalid_argument(
                "mlp needs at least input and output dims".to_string(),
            ));
        }
        let layers = dims
            .windows(2)
            .map(|w| LinearParams::zeros(w[0], w[1]))
            .collect();
        Ok(MlpParams {
            dims: dims.to_vec(),
            layers,
        })
    }

    pub fn init_uniform(dims: &[usize], rng: &mut SeededRng) -> Result<Self> {
        let mut p = MlpParams::zeros(dims)?;
        for (layer, w) in p.layers.iter_mut().zip(dims.windows(2)) {
            *layer = LinearParams::init_uniform(w[0], w[1], rng);
        }
        Ok(p)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn in_dim(&self) -> usize {
        self.dims[0]
    }

    pub fn out_dim(&self) -> usize {
        *self.dims.last().unwrap()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.in_dim() {
            return Err(Error::invalid_argument(format!(
                "mlp forward: input length {} does not match dim {}",
                x.len(),
                self.in_dim()
            )));
        }
        let last = self.layers.len() - 1;
        let mut a = x.to_vec();
        for (i, layer) in self.layers.iter().enumerate() {
            a = layer.forward(&a)?;
            if i != last {
                for v in &mut a {
                    *v = v.tanh();
                }
            }
        }
        Ok(a)
    }

    /// Returns d<cotangent, f(x)>/dx and accumulates parameter gradients.
    /// Recomputes the forward activations internally.
    pub fn vjp_accumulate(
        &self,
        x: &[f64],
        cotangent: &[f64],
        grads: &mut MlpParams,
    ) -> Result<Vec<f64>> {
        if x.len() != self.in_dim() {
            return Err(Error::invalid_argument(format!(
                "mlp vjp: input length {} does not match dim {}",
                x.len(),
                self.in_dim()
            )));
        }
        if cotangent.len() != self.out_dim() {
            return Err(Error::invalid_argument(format!(
                "mlp vjp: cotangent length {} does not match out dim {}",
                cotangent.len(),
                self.out_dim()
            )));
        }
        if grads.dims != self.dims {
            return Err(Error::invalid_argument(
                "mlp vjp: gradient accumulator dims mismatch".to_string(),
            ));
        }
        let last = self.layers.len() - 1;
        // activations[i] is the input to layer i; posts[i] the post-tanh output
        // of hidden layer i (needed for tanh').
        let mut activations: Vec<Vec<f64>> = Vec::with_capacity(self.layers.len());
        let mut posts: Vec<Vec<f64>> = Vec::with_capacity(last);
        let mut a = x.to_vec();
        for (i, layer) in self.layers.iter().enumerate() {
            activations.push(a.clone());
            a = layer.forward(&a)?;
            if i != last {
                for v in &mut a {
                    *v = v.tanh();
                }
                posts.push(a.clone());
            }
        }
        let mut delta = cotangent.to_vec();
        for i in (0..self.layers.len()).rev() {
            if i != last {
                // delta holds d/d(post-tanh); convert to pre-activation.
                for (d, &p) in delta.iter_mut().zip(&posts[i]) {
                    *d *= 1.0 - p * p;
                }
            }
            delta = self.layers[i].vjp_accumulate(&activations[i], &delta, &mut grads.layers[i])?;
        }
        Ok(delta)
    }

    pub fn vjp(&self, x: &[f64], cotangent: &[f64]) -> Result<(Vec<f64>, MlpParams)> {
        let mut grads = MlpParams::zeros(&self.dims)?;
        let dx = self.vjp_accumulate(x, cotangent, &mut grads)?;
        Ok((dx, grads))
    }

    pub fn add_scaled(&mut self, other: &MlpParams, scale: f64) {
        for (a, b) in self.layers.iter_mut().zip(&other.layers) {
            a.add_scaled(b, scale);
        }
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(|l| l.param_count()).sum()
    }

    /// Flatten all parameters (layer order, weights row-major then bias).
    pub fn flatten_into(&self, out: &mut Vec<f64>) {
        for layer in &self.layers {
            out.extend_from_slice(layer.weight.data());
            out.extend_from_slice(&layer.bias);
        }
    }

    /// Inverse of `flatten_into` for gradient accumulators of the same shape.
    pub fn add_flat(&mut self, flat: &[f64], scale: f64) -> Result<()> {
        if flat.len() != self.param_count() {
            return Err(Error::invalid_argument(format!(
                "mlp add_flat: {} values for {} parameters",
                flat.len(),
                self.param_count()
            )));
        }
        let mut off = 0;
        for layer in &mut self.layers {
            for w in layer.weight.data_mut() {
                *w += scale * flat[off];
                off += 1;
            }
            for b in &mut layer.bias {
                *b += scale * flat[off];
                off += 1;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::testutil::{central_diff, max_rel_err};

    #[test]
    fn zero_network_maps_everything_to_zero() {
        let p = MlpParams::zeros(&[3, 4, 2]).unwrap();
        assert_eq!(p.forward(&[1.0, -2.0, 0.5]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn scalar_chain_passes_through_tanh_then_identity() {
        // 1-1-1 net, unit weights, zero bias, x = 0: tanh(0) = 0 -> 0.
        let mut p = MlpParams::zeros(&[1, 1, 1]).unwrap();
        p.layers[0].weight.set(0, 0, 1.0);
        p.layers[1].weight.set(0, 0, 1.0);
        assert_eq!(p.forward(&[0.0]).unwrap(), vec![0.0]);
        // Nonzero input goes through one tanh.
        let y = p.forward(&[0.7]).unwrap();
        assert!((y[0] - 0.7f64.tanh()).abs() < 1e-15);
    }

    /// Straightforward re-implementation used as a duplicate-evaluation oracle.
    fn mlp_reference(p: &MlpParams, x: &[f64]) -> Vec<f64> {
        let mut a = x.to_vec();
        for (i, layer) in p.layers.iter().enumerate() {
            let mut next = vec![0.0; layer.out_dim()];
            for (r, nv) in next.iter_mut().enumerate() {
                let mut s = layer.bias[r];
                for (c, &xi) in a.iter().enumerate() {
                    s += layer.weight.get(r, c) * xi;
                }
                *nv = if i + 1 == p.layers.len() { s } else { s.tanh() };
            }
            a = next;
        }
        a
    }

    #[test]
    fn forward_matches_duplicate_evaluation() {
        let mut rng = SeededRng::new(11);
        let p = MlpParams::init_uniform(&[5, 7, 3], &mut rng).unwrap();
        let x: Vec<f64> = (0..5).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let got = p.forward(&x).unwrap();
        let want = mlp_reference(&p, &x);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn vjp_zero_cotangent_gives_zero_gradients() {
        let mut rng = SeededRng::new(2);
        let p = MlpParams::init_uniform(&[3, 5, 3], &mut rng).unwrap();
        let (dx, grads) = p.vjp(&[0.2, -0.1, 0.4], &[0.0, 0.0, 0.0]).unwrap();
        assert!(dx.iter().all(|v| *v == 0.0));
        let mut flat = Vec::new();
        grads.flatten_into(&mut flat);
        assert!(flat.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn single_layer_vjp_is_transpose_contraction() {
        let mut rng = SeededRng::new(3);
        let p = MlpParams::init_uniform(&[4, 4], &mut rng).unwrap();
        let cot = vec![0.3, -0.5, 0.1, 0.9];
        let (dx, _) = p.vjp(&[0.1, 0.2, 0.3, 0.4], &cot).unwrap();
        let expected = p.layers[0].weight.matvec_transpose(&cot).unwrap();
        assert_eq!(dx, expected);
    }

    #[test]
    fn vjp_matches_finite_differences() {
        let mut rng = SeededRng::new(4);
        let p = MlpParams::init_uniform(&[4, 8, 4], &mut rng).unwrap();
        let x: Vec<f64> = (0..4).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let cot: Vec<f64> = (0..4).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let (dx, grads) = p.vjp(&x, &cot).unwrap();

        let scalar = |p: &MlpParams, x: &[f64]| -> f64 {
            p.forward(x)
                .unwrap()
                .iter()
                .zip(&cot)
                .map(|(y, c)| y * c)
                .sum()
        };

        // Input gradient.
        for i in 0..x.len() {
            let fd = central_diff(1e-6, |h| {
                let mut xp = x.clone();
                xp[i] += h;
                scalar(&p, &xp)
            });
            assert!(
                max_rel_err(dx[i], fd) < 1e-5,
                "input grad {i}: {} vs fd {}",
                dx[i],
                fd
            );
        }

        // Parameter gradients.
        let mut analytic = Vec::new();
        grads.flatten_into(&mut analytic);
        for k in 0..analytic.len() {
            let fd = central_diff(1e-6, |h| {
                let mut pp = p.clone();
                let mut bump = vec![0.0; analytic.len()];
                bump[k] = h;
                pp.add_flat(&bump, 1.0).unwrap();
                scalar(&pp, &x)
            });
            assert!(
                max_rel_err(analytic[k], fd) < 1e-5,
                "param grad {k}: {} vs fd {}",
                analytic[k],
                fd
            );
        }
    }

    #[test]
    fn vjp_is_linear_in_cotangent() {
        let mut rng = SeededRng::new(5);
        let p = MlpParams::init_uniform(&[3, 6, 3], &mut rng).unwrap();
        let x = vec![0.3, -0.2, 0.5];
        let u = vec![0.1, 0.7, -0.3];
        let v = vec![-0.4, 0.2, 0.6];
        let (a, b) = (2.5, -1.25);
        let combo: Vec<f64> = u.iter().zip(&v).map(|(ui, vi)| a * ui + b * vi).collect();
        let (dx_combo, _) = p.vjp(&x, &combo).unwrap();
        let (dx_u, _) = p.vjp(&x, &u).unwrap();
        let (dx_v, _) = p.vjp(&x, &v).unwrap();
        for i in 0..3 {
            let lin = a * dx_u[i] + b * dx_v[i];
            assert!((dx_combo[i] - lin).abs() < 1e-12);
        }
    }
}
