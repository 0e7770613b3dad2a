//! The group `Γ* = H*(F)⟨x_0, x_1, ...⟩`, the connecting map `δ`, the spaces
//! `Π^k`, and the action of the twisted algebra `S`.
//!
//! Classes are stored in C-coordinates. The P-coordinates
//! `C_i = (-1)^i i! P_i` turn the kernel condition into `∂P_i = P_{i-1}` and
//! the `t`-action into a plain shift.

mod algebra;
mod class;
mod decompose;
mod ops;
mod pi;

pub use algebra::{s_act, s_act_to, s_multiply, SElement};
pub use class::{coeff_weight, PushforwardClass};
pub use decompose::{decompose, Base, Decomposition, Level};
pub use ops::{delta, monomial_action, mult_by, t_action, xi_gen, xi_pe, zj_action};
pub use pi::{pi_even, pi_odd_obstructions, solve_delta, DeltaSolution, Obstruction, OddPi};
