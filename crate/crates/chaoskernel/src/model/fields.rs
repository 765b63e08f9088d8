use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

/// Point of the unit tangent bundle in the coordinates `(λ, μ, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint {
    pub lambda: f64,
    pub mu: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PhasePoint {
    pub fn new(lambda: f64, mu: f64, x: f64, y: f64, z: f64) -> Self {
        Self { lambda, mu, x, y, z }
    }

    /// `(ch λ ch μ, ch λ sh μ, sh λ)`.
    pub fn velocity(&self) -> [f64; 3] {
        let (cl, sl) = (self.lambda.cosh(), self.lambda.sinh());
        [cl * self.mu.cosh(), cl * self.mu.sinh(), sl]
    }

    /// `⟨ξ̇, ξ̇⟩ − 1`, zero up to rounding.
    pub fn mass_shell_defect(&self) -> f64 {
        let [v0, v1, v2] = self.velocity();
        (v0 - v1) * (v0 + v1) - v2 * v2 - 1.0
    }

    fn coords(&self) -> [f64; 5] {
        [self.lambda, self.mu, self.x, self.y, self.z]
    }

    fn from_coords(c: [f64; 5]) -> Self {
        Self::new(c[0], c[1], c[2], c[3], c[4])
    }
}

/// Components over `(∂s, ∂λ, ∂μ, ∂x, ∂y, ∂z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FieldVector(pub [f64; 6]);

impl FieldVector {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// `(V₁, V₂, V′₀)` with unit speed.
pub fn vector_fields(p: &PhasePoint) -> (FieldVector, FieldVector, FieldVector) {
    let (cl, sl) = (p.lambda.cosh(), p.lambda.sinh());
    let (cm, sm) = (p.mu.cosh(), p.mu.sinh());
    let v1 = FieldVector([0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    let v2 = FieldVector([0.0, 0.0, 1.0 / cl, 0.0, 0.0, 0.0]);
    let v0 = FieldVector([1.0, 0.5 * p.lambda.tanh(), 0.0, cl * cm, cl * sm, sl]);
    (v1, v2, v0)
}

/// `(V′₀, V₁, V₂, [V₁,V′₀], [V₂,V′₀], [V₂,[V₂,V′₀]])`.
pub fn bracket_basis(p: &PhasePoint) -> [FieldVector; 6] {
    let (v1, v2, v0) = vector_fields(p);
    let (cl, sl, th) = (p.lambda.cosh(), p.lambda.sinh(), p.lambda.tanh());
    let (cm, sm) = (p.mu.cosh(), p.mu.sinh());
    let b10 = FieldVector([0.0, 0.5 / (cl * cl), 0.0, sl * cm, sl * sm, cl]);
    let b20 = FieldVector([0.0, 0.0, 0.5 * th * th / cl, sm, cm, 0.0]);
    let b220 = FieldVector([0.0, 0.0, 0.0, cm / cl, sm / cl, 0.0]);
    [v0, v1, v2, b10, b20, b220]
}

/// `[A, B] = (A·∇)B − (B·∇)A` by central differences with step `h`; fields must not depend on s.
pub fn lie_bracket_numeric<A, B>(a: A, b: B, p: &PhasePoint, h: f64) -> FieldVector
where
    A: Fn(&PhasePoint) -> FieldVector,
    B: Fn(&PhasePoint) -> FieldVector,
{
    let directional = |dir: &FieldVector, f: &dyn Fn(&PhasePoint) -> FieldVector| {
        let base = p.coords();
        let shift = |t: f64| {
            let mut c = base;
            for (ci, di) in c.iter_mut().zip(dir.0[1..].iter()) {
                *ci += t * di;
            }
            f(&PhasePoint::from_coords(c))
        };
        let (plus, minus) = (shift(h), shift(-h));
        let mut out = [0.0; 6];
        for (o, (u, v)) in out.iter_mut().zip(plus.0.iter().zip(minus.0.iter())) {
            *o = (u - v) / (2.0 * h);
        }
        out
    };
    let ab = directional(&a(p), &b);
    let ba = directional(&b(p), &a);
    let mut out = [0.0; 6];
    for (o, (u, v)) in out.iter_mut().zip(ab.iter().zip(ba.iter())) {
        *o = u - v;
    }
    FieldVector(out)
}

/// Number of singular values above `1e-10 · σ_max`.
pub fn matrix_rank(vectors: &[FieldVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m = SMatrix::<f64, 6, 6>::zeros();
    for (j, v) in vectors.iter().take(6).enumerate() {
        for i in 0..6 {
            m[(i, j)] = v.0[i];
        }
    }
    let sv = m.singular_values();
    let top = sv.max();
    if !(top > 0.0) {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-10 * top).count()
}

/// Rank of the six-field frame from [`bracket_basis`].
pub fn hormander_rank(p: &PhasePoint) -> usize {
    matrix_rank(&bracket_basis(p))
}
