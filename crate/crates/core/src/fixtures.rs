//! Committed canonical dumps, their generator, and a byte comparison.

use std::path::Path;

use crate::closure::{dump_closure, enumerate_closed};
use crate::config::Limits;
use crate::constructions::{build_perp5, mo_pair_swap_bijection, tensor_trace_lattice};
use crate::error::{PlatError, Result};
use crate::orthospace::{make_mo, make_powerset_space};
use crate::sepprod::{separated_product, sharp};

pub const MO2_SEPPROD: &str = include_str!("../fixtures/mo2_sepprod.clos.txt");
pub const MO2_POWERSET2_SEPPROD: &str = include_str!("../fixtures/mo2_powerset2_sepprod.clos.txt");
pub const L5_MO2: &str = include_str!("../fixtures/l5_mo2.clos.txt");
pub const L0_Q3: &str = include_str!("../fixtures/l0_q3.clos.txt");
pub const L0_Q3_REPORT: &str = include_str!("../fixtures/l0_q3_report.json");

/// File names with their committed contents.
pub fn committed() -> [(&'static str, &'static str); 5] {
    [
        ("mo2_sepprod.clos.txt", MO2_SEPPROD),
        ("mo2_powerset2_sepprod.clos.txt", MO2_POWERSET2_SEPPROD),
        ("l5_mo2.clos.txt", L5_MO2),
        ("l0_q3.clos.txt", L0_Q3),
        ("l0_q3_report.json", L0_Q3_REPORT),
    ]
}

/// Pretty JSON with a trailing newline, the format of report fixtures.
pub fn to_json_text<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Freshly computed contents, in the order of `committed`.
pub fn generate(limits: &Limits) -> Result<Vec<(&'static str, String)>> {
    let mo2 = make_mo(2)?;
    let (_, sys) = separated_product(&mo2, &mo2, limits)?;
    let (_, mixed) = separated_product(&mo2, &make_powerset_space(2)?, limits)?;
    let f = mo_pair_swap_bijection(2)?;
    let l5 = build_perp5(&sharp(&mo2, &mo2)?, &f, &f)?;
    let l5_sys = enumerate_closed(&l5, limits)?;
    let l0 = tensor_trace_lattice(3, 1, limits)?;
    Ok(vec![
        ("mo2_sepprod.clos.txt", dump_closure(&sys)),
        ("mo2_powerset2_sepprod.clos.txt", dump_closure(&mixed)),
        ("l5_mo2.clos.txt", dump_closure(&l5_sys)),
        ("l0_q3.clos.txt", dump_closure(&l0.family)),
        ("l0_q3_report.json", to_json_text(&l0.report)),
    ])
}

/// Write every fixture into `dir`.
pub fn regenerate(dir: &Path, limits: &Limits) -> Result<Vec<&'static str>> {
    std::fs::create_dir_all(dir).map_err(|e| PlatError::Config(format!("{}: {e}", dir.display())))?;
    let mut names = Vec::new();
    for (name, text) in generate(limits)? {
        std::fs::write(dir.join(name), text)
            .map_err(|e| PlatError::Config(format!("{name}: {e}")))?;
        names.push(name);
    }
    Ok(names)
}

/// Compare fresh contents with the files in `dir`; returns the names of
/// fixtures that are missing or differ.
pub fn check_dir(dir: &Path, limits: &Limits) -> Result<Vec<&'static str>> {
    let mut stale = Vec::new();
    for (name, text) in generate(limits)? {
        match std::fs::read_to_string(dir.join(name)) {
            Ok(existing) if existing == text => {}
            _ => stale.push(name),
        }
    }
    Ok(stale)
}
