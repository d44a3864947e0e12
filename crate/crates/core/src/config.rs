use std::env;

/// Environment variable overriding [`DEFAULT_MAX_LATTICE`].
pub const MAX_LATTICE_ENV: &str = "BIRKHOFF_MAX_LATTICE";

/// Largest explicit lattice (meet/join tables included) built by default.
pub const DEFAULT_MAX_LATTICE: usize = 4096;

/// Size bound for materialized explicit lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_lattice: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_lattice: DEFAULT_MAX_LATTICE,
        }
    }
}

impl Bounds {
    /// Reads `BIRKHOFF_MAX_LATTICE`, falling back to the default when unset.
    /// Zero or unparsable values are rejected.
    pub fn from_env() -> Result<Bounds, String> {
        match env::var(MAX_LATTICE_ENV) {
            Ok(raw) => match raw.trim().parse::<usize>() {
                Ok(0) | Err(_) => Err(format!(
                    "{MAX_LATTICE_ENV} must be a positive integer, got `{raw}`"
                )),
                Ok(n) => Ok(Bounds { max_lattice: n }),
            },
            Err(_) => Ok(Bounds::default()),
        }
    }
}
