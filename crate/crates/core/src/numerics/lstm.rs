//! Standard LSTM cell (no peepholes) with a cached forward pass and exact
//! manual backward pass.
//!
//! Gates operate on the concatenated vector z = [x; h]:
//!   i = sigmoid(W_i z + b_i)      input gate
//!   f = sigmoid(W_f z + b_f)      forget gate
//!   g = tanh   (W_g z + b_g)      candidate
//!   o = sigmoid(W_o z + b_o)      output gate
//!   c' = f .* c + i .* g
//!   h' = o .* tanh(c')

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;
use crate::numerics::rng::SeededRng;

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LstmParams {
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub w_i: Matrix,
    pub w_f: Matrix,
    pub w_g: Matrix,
    pub w_o: Matrix,
    pub b_i: Vec<f64>,
    pub b_f: Vec<f64>,
    pub b_g: Vec<f64>,
    pub b_o: Vec<f64>,
}

/// Values recorded by the forward pass that the backward pass consumes.
#[derive(Debug, Clone)]
pub struct LstmCache {
    z: Vec<f64>,
    c_prev: Vec<f64>,
    i: Vec<f64>,
    f: Vec<f64>,
    g: Vec<f64>,
    o: Vec<f64>,
    tanh_c_new: Vec<f64>,
}

impl LstmParams {
    pub fn zeros(input_dim: usize, hidden_dim: usize) -> Self {
        let cols = input_dim + hidden_dim;
        LstmParams {
            input_dim,
            hidden_dim,
            w_i: Matrix::zeros(hidden_dim, cols),
            w_f: Matrix::zeros(hidden_dim, cols),
            w_g: Matrix::zeros(hidden_dim, cols),
            w_o: Matrix::zeros(hidden_dim, cols),
            b_i: vec![0.0; hidden_dim],
            b_f: vec![0.0; hidden_dim],
            b_g: vec![0.0; hidden_dim],
            b_o: vec![0.0; hidden_dim],
        }
    }

    /// Uniform(-s, s) with s = 1/sqrt(input+hidden); forget-gate bias set to 1
    /// so early training does not flush the cell state.
    pub fn init_uniform(input_dim: usize, hidden_dim: usize, rng: &mut SeededRng) -> Self {
        let mut p = LstmParams::zeros(input_dim, hidden_dim);
        let s = 1.0 / ((input_dim + hidden_dim) as f64).sqrt();
        for w in [&mut p.w_i, &mut p.w_f, &mut p.w_g, &mut p.w_o] {
            for v in w.data_mut() {
                *v = rng.uniform(-s, s);
            }
        }
        for b in [&mut p.b_i, &mut p.b_g, &mut p.b_o] {
            for v in b.iter_mut() {
                *v = rng.uniform(-s, s);
            }
        }
        for v in &mut p.b_f {
            *v = 1.0;
        }
        p
    }

    fn check_state(&self, x: &[f64], h: &[f64], c: &[f64]) -> Result<()> {
        if x.len() != self.input_dim || h.len() != self.hidden_dim || c.len() != self.hidden_dim {
            return Err(Error::invalid_argument(format!(
                "lstm: got x={}, h={}, c={} for input_dim={}, hidden_dim={}",
                x.len(),
                h.len(),
                c.len(),
                self.input_dim,
                self.hidden_dim
            )));
        }
        Ok(())
    }

    pub fn forward(
        &self,
        x: &[f64],
        h: &[f64],
        c: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>, LstmCache)> {
        self.check_state(x, h, c)?;
        let mut z = Vec::with_capacity(self.input_dim + self.hidden_dim);
        z.extend_from_slice(x);
        z.extend_from_slice(h);

        let gate = |w: &Matrix, b: &[f64]| -> Result<Vec<f64>> {
            let mut pre = w.matvec(&z)?;
            for (p, &bi) in pre.iter_mut().zip(b) {
                *p += bi;
            }
            Ok(pre)
        };
        let i: Vec<f64> = gate(&self.w_i, &self.b_i)?.iter().map(|&v| sigmoid(v)).collect();
        let f: Vec<f64> = gate(&self.w_f, &self.b_f)?.iter().map(|&v| sigmoid(v)).collect();
        let g: Vec<f64> = gate(&self.w_g, &self.b_g)?.iter().map(|&v| v.tanh()).collect();
        let o: Vec<f64> = gate(&self.w_o, &self.b_o)?.iter().map(|&v| sigmoid(v)).collect();

        let mut c_new = vec![0.0; self.hidden_dim];
        for k in 0..self.hidden_dim {
            c_new[k] = f[k] * c[k] + i[k] * g[k];
        }
        let tanh_c_new: Vec<f64> = c_new.iter().map(|v| v.tanh()).collect();
        let mut h_new = vec![0.0; self.hidden_dim];
        for k in 0..self.hidden_dim {
            h_new[k] = o[k] * tanh_c_new[k];
        }

        let cache = LstmCache {
            z,
            c_prev: c.to_vec(),
            i,
            f,
            g,
            o,
            tanh_c_new,
        };
        Ok((h_new, c_new, cache))
    }

    /// Gradients of `<h_grad, h'> + <c_grad, c'>` w.r.t. inputs and parameters.
    /// Returns (dx, dh_prev, dc_prev) and accumulates parameter gradients.
    pub fn backward_accumulate(
        &self,
        cache: &LstmCache,
        h_grad: &[f64],
        c_grad: &[f64],
        grads: &mut LstmParams,
    ) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let d = self.hidden_dim;
        if cache.z.len() != self.input_dim + d || cache.i.len() != d {
            return Err(Error::invalid_argument(
                "lstm backward: cache does not match cell dimensions".to_string(),
            ));
        }
        if h_grad.len() != d || c_grad.len() != d {
            return Err(Error::invalid_argument(format!(
                "lstm backward: cotangent lengths {}/{} for hidden dim {}",
                h_grad.len(),
                c_grad.len(),
                d
            )));
        }

        // h' = o .* tanh(c'), so c' receives gradient from both paths.
        let mut dc_total = vec![0.0; d];
        let mut do_pre = vec![0.0; d];
        for k in 0..d {
            let t = cache.tanh_c_new[k];
            dc_total[k] = c_grad[k] + h_grad[k] * cache.o[k] * (1.0 - t * t);
            do_pre[k] = h_grad[k] * t * cache.o[k] * (1.0 - cache.o[k]);
        }

        let mut di_pre = vec![0.0; d];
        let mut df_pre = vec![0.0; d];
        let mut dg_pre = vec![0.0; d];
        let mut dc_prev = vec![0.0; d];
        for k in 0..d {
            di_pre[k] = dc_total[k] * cache.g[k] * cache.i[k] * (1.0 - cache.i[k]);
            df_pre[k] = dc_total[k] * cache.c_prev[k] * cache.f[k] * (1.0 - cache.f[k]);
            dg_pre[k] = dc_total[k] * cache.i[k] * (1.0 - cache.g[k] * cache.g[k]);
            dc_prev[k] = dc_total[k] * cache.f[k];
        }

        let mut dz = vec![0.0; self.input_dim + d];
        for (w, gw, gb, dpre) in [
            (&self.w_i, &mut grads.w_i, &mut grads.b_i, &di_pre),
            (&self.w_f, &mut grads.w_f, &mut grads.b_f, &df_pre),
            (&self.w_g, &mut grads.w_g, &mut grads.b_g, &dg_pre),
            (&self.w_o, &mut grads.w_o, &mut grads.b_o, &do_pre),
        ] {
            gw.add_outer(1.0, dpre, &cache.z)?;
            for (b, &v) in gb.iter_mut().zip(dpre.iter()) {
                *b += v;
            }
            let back = w.matvec_transpose(dpre)?;
            for (a, &b) in dz.iter_mut().zip(&back) {
                *a += b;
            }
        }

        let dx = dz[..self.input_dim].to_vec();
        let dh_prev = dz[self.input_dim..].to_vec();
        Ok((dx, dh_prev, dc_prev))
    }

    pub fn add_scaled(&mut self, other: &LstmParams, scale: f64) {
        self.w_i.add_scaled(&other.w_i, scale);
        self.w_f.add_scaled(&other.w_f, scale);
        self.w_g.add_scaled(&other.w_g, scale);
        self.w_o.add_scaled(&other.w_o, scale);
        for (a, b) in [
            (&mut self.b_i, &other.b_i),
            (&mut self.b_f, &other.b_f),
            (&mut self.b_g, &other.b_g),
            (&mut self.b_o, &other.b_o),
        ] {
            for (ai, &bi) in a.iter_mut().zip(b) {
                *ai += scale * bi;
            }
        }
    }
}
