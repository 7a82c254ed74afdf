//! Sign and normalization conventions, as printed by `analyze --convention`.

/// Reference tables write `J` acting on a k-form as `(−1)^k` times the literal
/// pullback `(Jα)(X, …) = α(JX, …)` used here. Only reconciliation uses this.
pub const J_ON_FORMS_TWIST: bool = true;

/// Reference tables use the Schouten bracket with the opposite global sign.
pub const SCHOUTEN_GLOBAL_SIGN_TWIST: bool = true;

pub const LEDGER: &str = "\
Sign conventions
  d / bracket      dα(X,Y) = −α([X,Y]); `d e1 = e26` means [e2,e6] = −e1
  wedge            determinant convention: e12(X,Y) = X1 Y2 − X2 Y1
  endomorphisms    columns are images: J e_j = Σ_i J[i][j] e_i
  bilinear forms   B[i][j] = B(e_i, e_j); Omega(JX,Y) has matrix Jᵀ W
  J on forms       literal pullback (Jα)(X1,…,Xk) = α(JX1,…,JXk);
                   reference tables differ by (−1)^k (twist flag: on)
  package          J− = −Ω⁻¹J+*Ω, g = ½Ω(J+ + J−), b = −½Ω(J+ − J−),
                   ω±(X,Y) = g(X, J±Y), Q = [J+,J−] = J+J− − J−J+
  musical          π♯α = π(α,·); ♯ₖ⁻¹ raises every slot with g⁻¹
  Λ³π♯             (Λ³π♯φ)(α,β,γ) = φ(π♯α, π♯β, π♯γ)
  Schouten         [X∧Y, Z∧W] = [X,Z]∧Y∧W − [X,W]∧Y∧Z − [Y,Z]∧X∧W + [Y,W]∧X∧Z;
                   reference tables carry the opposite global sign (twist flag: on)
  twisted Poisson  [π,π] = ½Λ³π♯φ with dφ = 0
  Q̃               bivector_from_skew(Q) = Q∘♯⁻¹; the report's [Q̃,Q̃] uses ½Q
  pairing          ⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))
  generalized      Ω, ω± lower by X ↦ ι_X; b lowers by X ↦ b(·,X); J* = Jᵀ;
                   G = −J1 J2 is tested on the symmetric matrix P·G
  ψ                ψ(X,Y,Z) = Ω(X, N−(Y,Z)); ψ(X−iJ+X, …) = re + i·im
";

pub fn ledger() -> &'static str {
    LEDGER
}
