use crate::OracleError;

/// Central-difference gradient with per-coordinate step
/// `max(rel_step * |x_j|, rel_step)`.
pub fn finite_difference_gradient<F>(f: F, x: &[f64], rel_step: f64) -> Result<Vec<f64>, OracleError>
where
    F: Fn(&[f64]) -> f64,
{
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let h = (rel_step * x[j].abs()).max(rel_step);
        probe[j] = x[j] + h;
        let up = f(&probe);
        probe[j] = x[j] - h;
        let down = f(&probe);
        probe[j] = x[j];
        if !up.is_finite() || !down.is_finite() {
            return Err(OracleError::NonFinite { at: x.to_vec() });
        }
        // Use the realised step, which differs from h after rounding.
        let span = (x[j] + h) - (x[j] - h);
        grad.push((up - down) / span);
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_is_exact() {
        let f = |v: &[f64]| 3.0 * v[0] * v[0] - 2.0 * v[0] * v[1] + 0.5 * v[1] * v[1] + v[1];
        let g = finite_difference_gradient(f, &[1.5, -2.0], 1e-4).unwrap();
        assert!((g[0] - (9.0 + 4.0)).abs() < 1e-10);
        assert!((g[1] - (-3.0 - 2.0 + 1.0)).abs() < 1e-10);
    }

    #[test]
    fn flat_coordinate() {
        let h = 1e-5;
        let g = finite_difference_gradient(|v: &[f64]| v[0].sin(), &[0.3, 7.0], h).unwrap();
        assert!(g[1].abs() <= h * h);
    }

    #[test]
    fn non_finite_reported() {
        let r = finite_difference_gradient(|v: &[f64]| v[0].ln(), &[0.0], 1e-6);
        assert!(matches!(r, Err(OracleError::NonFinite { .. })));
    }
}
