//! `cvm analytics`: every closed-form quantity for one parameter pair, as
//! exact rationals plus decimal renderings.

use crate::csvout::{format_float, CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::canonical_text;
use anyhow::{anyhow, Result};
use cvm::analytics::*;
use cvm::model::params::rho_c;
use cvm::rational::{display_fraction, to_f64, Rational};
use cvm::{DensityVector, Params};
use std::collections::BTreeMap;
use std::path::Path;

pub fn run(
    mut map: BTreeMap<String, String>,
    dir: &Path,
    f_flag: Option<u32>,
    theta_flag: Option<u32>,
) -> Result<()> {
    if let Some(f) = f_flag {
        map.insert("model.f".into(), f.to_string());
    }
    if let Some(theta) = theta_flag {
        map.insert("model.theta".into(), theta.to_string());
    }
    let f: u32 = map
        .get("model.f")
        .ok_or_else(|| anyhow!("missing F (pass --F or model.f)"))?
        .parse()
        .map_err(|e| anyhow!("model.f: {e}"))?;
    let theta: u32 = map
        .get("model.theta")
        .ok_or_else(|| anyhow!("missing theta (pass --theta or model.theta)"))?
        .parse()
        .map_err(|e| anyhow!("model.theta: {e}"))?;
    let params = Params::new(f, theta).map_err(|e| anyhow!("{e}"))?;
    crate::ensure_outdir(dir)?;

    let mut csv = CsvWriter::create(&dir.join("analytics.csv"), &["quantity", "exact", "decimal"])?;
    let rational_row = |csv: &mut CsvWriter, name: &str, value: &Rational| -> Result<()> {
        csv.row(&[
            Field::Str(name),
            Field::Rational(value),
            Field::Float(to_f64(value)),
        ])
    };

    let uniform = DensityVector::uniform(f);
    rational_row(&mut csv, "rho_c_uniform", &rho_c(&params, &uniform))?;
    csv.row(&[
        Field::Str("centrist_set_size"),
        Field::UInt(params.centrist_set().len() as u64),
        Field::Str(""),
    ])?;
    csv.row(&[
        Field::Str("fluctuation_regime"),
        Field::Bool(params.in_fluctuation_regime()),
        Field::Str(""),
    ])?;

    // expected weight along the symmetric-density line, as a quadratic in rho2
    let (a2, a1, a0) = expected_phi_rho2_polynomial(&params);
    rational_row(&mut csv, "expected_phi_rho2_coeff_a2", &a2)?;
    rational_row(&mut csv, "expected_phi_rho2_coeff_a1", &a1)?;
    rational_row(&mut csv, "expected_phi_rho2_coeff_a0", &a0)?;
    rational_row(&mut csv, "expected_phi_uniform", &expected_phi_uniform(&params))?;

    let (fa, fb, fc) = contribution_bounds_uniform(&params);
    rational_row(&mut csv, "contribution_a_uniform", &fa)?;
    rational_row(&mut csv, "contribution_b_uniform_proof", &fb)?;
    let (_, fb_statement, _) =
        contribution_bounds_uniform_with(&params, FbVariant::Statement);
    rational_row(&mut csv, "contribution_b_uniform_statement", &fb_statement)?;
    rational_row(&mut csv, "contribution_c_uniform", &fc)?;

    let (fixation, margin) = fixation_predicate_uniform(&params);
    rational_row(&mut csv, "grand_margin", &margin)?;
    csv.row(&[
        Field::Str("fixation_proved_uniform"),
        Field::Bool(fixation),
        Field::Str(""),
    ])?;
    csv.row(&[
        Field::Str("classification"),
        Field::Str(&phase_class_of(&params).to_string()),
        Field::Str(""),
    ])?;

    let (c_minus, c_plus) = asymptotic_slope_roots();
    for (name, cert) in [("c_minus", &c_minus), ("c_plus", &c_plus)] {
        csv.row(&[
            Field::Str(name),
            Field::Str(&format!(
                "{}..{}",
                display_fraction(&cert.lo),
                display_fraction(&cert.hi)
            )),
            Field::Float(cert.value()),
        ])?;
    }

    if f == 4 && theta == 1 {
        let root = fixation_threshold_special();
        csv.row(&[
            Field::Str("fixation_threshold_rho2"),
            Field::Str(&format!(
                "{}..{}",
                display_fraction(&root.lo),
                display_fraction(&root.hi)
            )),
            Field::Float(root.value()),
        ])?;
        rational_row(&mut csv, "p_at_0", &polynomial_p(&Rational::from_integer(0.into())))?;
        rational_row(&mut csv, "p_at_one_half", &polynomial_p(&cvm::rational::rat(1, 2)))?;
    }

    let psi = mean_field_psi(0.25).map_err(|e| anyhow!("{e}"))?;
    csv.row(&[
        Field::Str("mean_field_psi_at_1_4"),
        Field::Str(&format_float(psi)),
        Field::Float(psi),
    ])?;
    csv.finish()?;

    let mut manifest = Manifest::new("analytics", canonical_text(&map), None);
    manifest.add_artifact("analytics.csv");
    manifest.write(dir)?;
    println!(
        "analytics: F={f} theta={theta} -> {}",
        dir.join("analytics.csv").display()
    );
    Ok(())
}

fn phase_class_of(params: &Params) -> PhaseClass {
    if params.in_fluctuation_regime() {
        PhaseClass::Fluctuation
    } else if fixation_predicate_uniform(params).0 {
        PhaseClass::FixationProved
    } else {
        PhaseClass::Unresolved
    }
}
