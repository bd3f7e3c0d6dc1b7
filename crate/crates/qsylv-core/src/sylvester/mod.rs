//! Building-block solvers the coupled systems are assembled from: the
//! single one-sided equation `A X - Y B = C`, the three two-equation pair
//! shapes sharing one unknown, and the four-term equation
//! `A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1`.

mod four_term;
mod pair;
mod rank_identities;
mod single;

pub use four_term::{FourTermEquation, FourTermSolution};
pub use pair::{PairKind, PairSolution, PairSystem};
pub use rank_identities::rank_identity_check;
pub use single::solve_single;

pub(crate) use four_term::FourTermOps;
pub(crate) use pair::{ChainOps, CommonLeftOps, CommonRightOps};
