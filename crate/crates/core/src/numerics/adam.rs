//! Adam optimizer over named parameter blocks.

use crate::error::{Error, Result};

/// Immutable view of one parameter (or gradient) block.
pub struct BlockRef<'a> {
    pub name: &'a str,
    pub data: &'a [f64],
}

/// Mutable view of one parameter block.
pub struct BlockMut<'a> {
    pub name: &'a str,
    pub data: &'a mut [f64],
}

#[derive(Debug, Clone)]
pub struct AdamState {
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
    step: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl AdamState {
    /// Zero-initialized moments shaped after the given blocks.
    pub fn new(blocks: &[BlockRef]) -> Self {
        AdamState {
            m: blocks.iter().map(|b| vec![0.0; b.data.len()]).collect(),
            v: blocks.iter().map(|b| vec![0.0; b.data.len()]).collect(),
            step: 0,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    /// One Adam update with bias correction. Block order must match `new`.
    pub fn step(&mut self, params: &mut [BlockMut], grads: &[BlockRef], lr: f64) -> Result<()> {
        if params.len() != self.m.len() || grads.len() != self.m.len() {
            return Err(Error::invalid_argument(format!(
                "adam: {} param / {} grad blocks for {} tracked blocks",
                params.len(),
                grads.len(),
                self.m.len()
            )));
        }
        for (g, m) in grads.iter().zip(&self.m) {
            if g.data.len() != m.len() {
                return Err(Error::invalid_argument(format!(
                    "adam: block '{}' has {} entries, expected {}",
                    g.name,
                    g.data.len(),
                    m.len()
                )));
            }
            if let Some(idx) = g.data.iter().position(|v| !v.is_finite()) {
                return Err(Error::Numeric(format!(
                    "non-finite gradient in block '{}' at index {}",
                    g.name, idx
                )));
            }
        }

        self.step += 1;
        let t = self.step as i32;
        let bc1 = 1.0 - self.beta1.powi(t);
        let bc2 = 1.0 - self.beta2.powi(t);
        for ((p, g), (m, v)) in params
            .iter_mut()
            .zip(grads)
            .zip(self.m.iter_mut().zip(self.v.iter_mut()))
        {
            for k in 0..g.data.len() {
                let gk = g.data[k];
                m[k] = self.beta1 * m[k] + (1.0 - self.beta1) * gk;
                v[k] = self.beta2 * v[k] + (1.0 - self.beta2) * gk * gk;
                let m_hat = m[k] / bc1;
                let v_hat = v[k] / bc2;
                p.data[k] -= lr * m_hat / (v_hat.sqrt() + self.epsilon);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_block<'a>(name: &'a str, data: &'a [f64]) -> Vec<BlockRef<'a>> {
        vec![BlockRef { name, data }]
    }

    #[test]
    fn zero_gradient_leaves_parameters_unchanged() {
        let mut w = vec![1.0, -2.0, 0.5];
        let g = vec![0.0; 3];
        let mut state = AdamState::new(&one_block("w", &w));
        state
            .step(
                &mut [BlockMut {
                    name: "w",
                    data: &mut w,
                }],
                &one_block("w", &g),
                0.1,
            )
            .unwrap();
        assert_eq!(w, vec![1.0, -2.0, 0.5]);
        assert_eq!(state.step_count(), 1);
    }

    #[test]
    fn first_step_moves_by_lr_times_sign() {
        // With bias correction, m_hat/sqrt(v_hat) = sign(g) at t=1 when eps -> 0.
        let mut w = vec![0.0, 0.0];
        let g = vec![3.5, -0.01];
        let mut state = AdamState::new(&one_block("w", &w)).with_epsilon(1e-16);
        state
            .step(
                &mut [BlockMut {
                    name: "w",
                    data: &mut w,
                }],
                &one_block("w", &g),
                0.05,
            )
            .unwrap();
        assert!((w[0] + 0.05).abs() < 1e-9, "w[0] = {}", w[0]);
        assert!((w[1] - 0.05).abs() < 1e-9, "w[1] = {}", w[1]);
    }

    #[test]
    fn quadratic_descends_below_half() {
        // Independent scalar recursion: minimize f(w) = w^2 from w = 1.
        let mut w = vec![1.0];
        let mut state = AdamState::new(&one_block("w", &w));
        let mut prev = 1.0f64;
        for _ in 0..100 {
            let g = vec![2.0 * w[0]];
            state
                .step(
                    &mut [BlockMut {
                        name: "w",
                        data: &mut w,
                    }],
                    &one_block("w", &g),
                    0.1,
                )
                .unwrap();
            assert!(w[0].abs() <= prev + 1e-12, "rising at w = {}", w[0]);
            prev = w[0].abs();
        }
        assert!(w[0].abs() < 0.5, "final w = {}", w[0]);
    }

    #[test]
    fn non_finite_gradient_names_the_block() {
        let mut w = vec![1.0];
        let g = vec![f64::NAN];
        let mut state = AdamState::new(&one_block("decoder.weight", &w));
        let err = state
            .step(
                &mut [BlockMut {
                    name: "decoder.weight",
                    data: &mut w,
                }],
                &one_block("decoder.weight", &g),
                0.1,
            )
            .unwrap_err();
        assert!(err.to_string().contains("decoder.weight"));
    }
}
