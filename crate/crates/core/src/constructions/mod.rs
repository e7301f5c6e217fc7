//! Products, pullbacks, subalgebras, congruences, quotients and coequalisers.

mod congruence;
mod product;
mod quotient;
mod subalgebra;

pub use congruence::{all_congruences, generate_congruence, kernel_congruence, relation_compose, Congruence, Relation};
pub(crate) use product::check_end;
pub use product::{product, product_map, pullback, ProductData, Pullback};
pub use quotient::{coequaliser, factor_through, quotient, Coequaliser, Quotient};
pub(crate) use subalgebra::closure;
pub use subalgebra::{subalgebra_generate, Subalgebra};
