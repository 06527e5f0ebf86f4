use crate::error::{PlatError, Result};

/// Environment variable that overrides [`Limits::max_atoms`].
pub const LIMIT_ATOMS_ENV: &str = "PLAT_LIMIT_ATOMS";

/// Search and enumeration bounds shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: usize,
    pub max_closed_sets: usize,
    pub aut_search_atoms: usize,
    pub ortho_search_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 64,
            max_closed_sets: 5_000_000,
            aut_search_atoms: 16,
            ortho_search_elements: 1000,
        }
    }
}

impl Limits {
    /// Defaults, with `PLAT_LIMIT_ATOMS` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(LIMIT_ATOMS_ENV) {
            let value: usize = raw.trim().parse().map_err(|_| {
                PlatError::Config(format!("{LIMIT_ATOMS_ENV}={raw:?} is not a count"))
            })?;
            if value == 0 || value > crate::bitset::MAX_ATOMS {
                return Err(PlatError::Config(format!(
                    "{LIMIT_ATOMS_ENV} must lie in 1..={}",
                    crate::bitset::MAX_ATOMS
                )));
            }
            limits.max_atoms = value;
        }
        Ok(limits)
    }
}
