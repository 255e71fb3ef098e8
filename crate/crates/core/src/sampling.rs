//! Random well-conditioned matrices for property tests and sampled checks.

use rand::Rng;

use crate::matrix::RealMatrix;

fn uniform<R: Rng + ?Sized>(rows: usize, cols: usize, half_width: f64, rng: &mut R) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| rng.random_range(-half_width..=half_width))
}

fn symmetric<R: Rng + ?Sized>(n: usize, half_width: f64, rng: &mut R) -> RealMatrix {
    let a = uniform(n, n, half_width, rng);
    (&a + &a.transpose()).scale(0.5)
}

/// Invertible `I + E` with small random `E`; condition number stays modest.
pub fn random_gl<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealMatrix {
    loop {
        let v = &RealMatrix::identity(n) + &uniform(n, n, 0.4, rng);
        if v.determinant().abs() > 0.25 {
            return v;
        }
    }
}

/// A random `S` with `SᵀJS = sign·J`, built as a product of shears
/// `[[I, 0], [P, I]]`, `[[I, Q], [0, I]]` (symmetric `P`, `Q`) and
/// `diag(V, V⁻ᵀ)`, times `diag(I, −I)` when `sign = −1`.
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, sign: f64, rng: &mut R) -> RealMatrix {
    let id = RealMatrix::identity(n);
    let zero = RealMatrix::zeros(n, n);
    let block = |a: &RealMatrix, b: &RealMatrix, c: &RealMatrix, d: &RealMatrix| {
        let mut m = RealMatrix::zeros(2 * n, 2 * n);
        m.set_block(0, 0, a);
        m.set_block(0, n, b);
        m.set_block(n, 0, c);
        m.set_block(n, n, d);
        m
    };
    let lower = block(&id, &zero, &symmetric(n, 0.5, rng), &id);
    let upper = block(&id, &symmetric(n, 0.5, rng), &zero, &id);
    let v = random_gl(n, rng);
    let v_it = v.inverse().expect("well-conditioned").transpose();
    let diag = block(&v, &zero, &zero, &v_it);
    let s = &(&lower * &upper) * &diag;
    if sign < 0.0 {
        &s * &block(&id, &zero, &zero, &id.scale(-1.0))
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_symplectic_has_requested_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=4 {
            for sign in [1.0, -1.0] {
                let s = random_symplectic(n, sign, &mut rng);
                assert!(s.is_symplectic(sign, 1e-12));
                assert!(!s.is_symplectic(-sign, 1e-3));
            }
        }
    }
}
