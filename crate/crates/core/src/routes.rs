//! Interchangeable ways of producing a named invariant, selected by name at
//! runtime. Results are memoized per process.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::geometry::{self, LiftInvariant, OrbitInvariant, OrbitName};
use crate::listed::ListedName;
use crate::mpoly::{MPoly, Space};

pub trait InvariantRoute: Send + Sync {
    fn name(&self) -> &'static str;

    /// Invariant names this route can produce.
    fn names(&self) -> &'static [&'static str];

    fn compute(&self, name: &str) -> Result<MPoly>;
}

/// Couples of fixed lines, plane products, averages over `T̃×1`.
pub struct Geometric;

impl InvariantRoute for Geometric {
    fn name(&self) -> &'static str {
        "geometric"
    }

    fn names(&self) -> &'static [&'static str] {
        &["q", "F6", "F8", "F12", "P6", "P8", "P12"]
    }

    fn compute(&self, name: &str) -> Result<MPoly> {
        match name {
            "q" => Ok(MPoly::quadric(Space::X)),
            "F6" => geometry::invariant_from_orbit(OrbitInvariant::F6),
            "F8" => geometry::invariant_from_orbit(OrbitInvariant::F8),
            "F12" => geometry::invariant_from_orbit(OrbitInvariant::F12),
            "P6" => geometry::orbit_plane_product(OrbitName::T6),
            "P8" => geometry::orbit_plane_product(OrbitName::O8),
            "P12" => geometry::orbit_plane_product(OrbitName::O12),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }
}

/// Lifted Klein products averaged over the reflection group.
pub struct Lift;

impl InvariantRoute for Lift {
    fn name(&self) -> &'static str {
        "lift"
    }

    fn names(&self) -> &'static [&'static str] {
        &["q", "F6", "F8", "F12", "Gamma12", "Gamma20", "Gamma30"]
    }

    fn compute(&self, name: &str) -> Result<MPoly> {
        let which = match name {
            "q" => return Ok(MPoly::quadric(Space::X)),
            "F6" => LiftInvariant::F6L,
            "F8" => LiftInvariant::F8L,
            "F12" => LiftInvariant::F12L,
            other => other.parse()?,
        };
        geometry::invariant_by_lift(which)
    }
}

/// The printed polynomials, verbatim.
pub struct Listed;

impl InvariantRoute for Listed {
    fn name(&self) -> &'static str {
        "listed"
    }

    fn names(&self) -> &'static [&'static str] {
        &["q", "F6", "F8", "F12", "P6", "P8", "P12"]
    }

    fn compute(&self, name: &str) -> Result<MPoly> {
        if name == "q" {
            return Ok(MPoly::quadric(Space::X));
        }
        Ok(name.parse::<ListedName>()?.poly())
    }
}

pub const ROUTE_NAMES: [&str; 3] = ["geometric", "lift", "listed"];

pub fn route(name: &str) -> Result<Box<dyn InvariantRoute>> {
    match name {
        "geometric" => Ok(Box::new(Geometric)),
        "lift" => Ok(Box::new(Lift)),
        "listed" => Ok(Box::new(Listed)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// The route used when none is given: geometric where it exists, lift for
/// the degree 12, 20, 30 invariants of `[3,3,5]`.
pub fn default_route(name: &str) -> &'static str {
    if Geometric.names().contains(&name) {
        "geometric"
    } else {
        "lift"
    }
}

/// Memoized `route(route_name).compute(name)`.
pub fn compute(route_name: &str, name: &str) -> Result<MPoly> {
    static CACHE: OnceLock<Mutex<HashMap<(String, String), MPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (route_name.to_string(), name.to_string());
    if let Some(p) = cache.lock().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let p = route(route_name)?.compute(name)?;
    cache.lock().expect("cache lock").insert(key, p.clone());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        for name in ROUTE_NAMES {
            assert_eq!(route(name).unwrap().name(), name);
        }
        assert!(route("guess").is_err());
        assert_eq!(default_route("F6"), "geometric");
        assert_eq!(default_route("Gamma30"), "lift");
    }

    #[test]
    fn every_route_knows_q() {
        for name in ROUTE_NAMES {
            assert_eq!(compute(name, "q").unwrap(), MPoly::quadric(Space::X));
        }
    }

    #[test]
    fn listed_and_geometric_octics_agree_up_to_scale() {
        let a = compute("listed", "F8").unwrap();
        let b = compute("geometric", "F8").unwrap();
        assert_eq!(a.scalar_ratio(&b), Some(crate::FieldElement::from_int(3)));
    }
}
