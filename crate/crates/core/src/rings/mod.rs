//! Quotient coordinate rings with canonical normal forms.

pub mod curve;
pub mod dan;
pub mod ratcurve;

pub use curve::{curve_normalize, CurveElement, CurveRing};
pub use dan::{dan_add, dan_delocalize, dan_localize, dan_mul, dan_normalize, DanElement, DanRing};
pub use ratcurve::{
    from_fraction, parse_rational, ratcurve_normalize, RatCurveElement, RatCurveRing,
};
