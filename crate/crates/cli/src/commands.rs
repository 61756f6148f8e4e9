//! Subcommand bodies. Each returns a finished report; exit status follows `Report::status`.

use std::f64::consts::PI;

use beamsplit_core::fock_engine::{
    bs_output_of_basis, bs_transform, coherent_fock, squeezed_inputs_output, squeezed_vacuum_fock,
    suggest_n_max,
};
use beamsplit_core::janszky::{
    bs_transform_atoms, circle_number_superposition, default_circle_radius, interfere_number_states,
    interfere_squeezed, line_squeezed_superposition, synthesize, synthesize_two_mode,
};
use beamsplit_core::special::MAX_FACTORIAL;
use beamsplit_core::{
    entanglement_entropy, fidelity, schmidt_singular_values, BeamSplitter, Complex, Error, FockVector,
    Result, SqueezeParams, TwoModeAtom, TwoModeFock, TwoModeSuperposition,
};

use crate::report::{col, Cell, Kind, Report};
use crate::{CompareArgs, HomScanArgs, SqueezeArgs, SynthArgs};

fn check_tol(name: &str, tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive and finite, got {tol}"
        )))
    }
}

/// `points` values from `lo` to `hi`, both included.
fn grid(lo: f64, hi: f64, points: u32) -> impl Iterator<Item = f64> {
    let last = (points - 1) as f64;
    (0..points).map(move |i| {
        if i + 1 == points {
            hi
        } else {
            lo + (hi - lo) * i as f64 / last
        }
    })
}

/// Smallest cutoff whose Poisson(mean) upper tail is at most `tol`.
fn poisson_cutoff(mean: f64, tol: f64) -> Result<usize> {
    if mean == 0.0 {
        return Ok(0);
    }
    let ln_mean = mean.ln();
    let mut ln_p = -mean;
    let mut cdf = 0.0;
    for k in 0..=MAX_FACTORIAL {
        if k > 0 {
            ln_p += ln_mean - (k as f64).ln();
        }
        cdf += ln_p.exp();
        if 1.0 - cdf <= tol {
            return Ok(k);
        }
    }
    Err(Error::FactorialOverflow(MAX_FACTORIAL + 1))
}

fn splitter_params(report: &mut Report, bs: &BeamSplitter) {
    report.param("t", bs.t());
    report.param("r", bs.r());
}

pub fn hom_scan(a: &HomScanArgs) -> Result<Report> {
    check_tol("tol", a.tol)?;
    let mut report = Report::new(
        "hom-scan",
        a.tol,
        vec![
            col("transmittance", Kind::Real),
            col("fock_coincidence", Kind::Real),
            col("fock_bunch_a", Kind::Real),
            col("fock_bunch_b", Kind::Real),
            col("janszky_coincidence", Kind::Real),
            col("janszky_bunch_a", Kind::Real),
            col("janszky_bunch_b", Kind::Real),
            col("abs_diff", Kind::Real),
        ],
    );
    report.param("points", a.points as usize);
    report.param("nodes", a.nodes);
    let mut worst = 0.0f64;
    for tt in grid(0.0, 1.0, a.points) {
        let bs = BeamSplitter::from_transmittance(tt)?;
        let fock = bs_output_of_basis(1, 1, &bs)?;
        let jz = interfere_number_states(1, 1, &bs, a.nodes, 2)?;
        let probs = |s: &TwoModeFock| {
            [
                s.amp(1, 1).norm_sqr(),
                s.amp(2, 0).norm_sqr(),
                s.amp(0, 2).norm_sqr(),
            ]
        };
        let (pf, pj) = (probs(&fock), probs(&jz));
        let diff = pf.iter().zip(&pj).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        worst = worst.max(diff);
        report.push(vec![
            tt.into(),
            pf[0].into(),
            pf[1].into(),
            pf[2].into(),
            pj[0].into(),
            pj[1].into(),
            pj[2].into(),
            diff.into(),
        ]);
    }
    report.summarize("max_abs_diff", worst);
    report.require(worst <= a.tol);
    Ok(report)
}

pub fn compare(a: &CompareArgs) -> Result<Report> {
    check_tol("tol", a.tol)?;
    check_tol("tail-tol", a.tail_tol)?;
    let bs = a.bs.splitter()?;
    let mut report = Report::new(
        "compare",
        a.tol,
        vec![
            col("j", Kind::Integer),
            col("k", Kind::Integer),
            col("fock", Kind::Complex),
            col("janszky", Kind::Complex),
            col("abs_diff", Kind::Real),
        ],
    );
    splitter_params(&mut report, &bs);
    report.param("tail_tol", a.tail_tol);

    let (n_max, nodes, fock, jz) = if let Some(mn) = &a.input.fock {
        let (m, n) = (mn[0], mn[1]);
        let n_max = a.n_max.unwrap_or(m + n);
        let nodes = a.nodes.unwrap_or((2 * n_max + 2).max(16));
        report.param("input", "fock");
        report.param("m", m);
        report.param("n", n);
        let input = TwoModeFock::basis(m, n, n_max)?;
        let fock = bs_transform(&input, &bs, a.tail_tol)?.state;
        let jz = interfere_number_states(m, n, &bs, nodes, n_max)?;
        (n_max, Some(nodes), fock, jz)
    } else if let Some(v) = &a.input.coherent {
        let (alpha, beta) = (Complex::new(v[0], v[1]), Complex::new(v[2], v[3]));
        let n_max = match a.n_max {
            Some(n) => n,
            None => poisson_cutoff(alpha.norm_sqr() + beta.norm_sqr(), a.tail_tol)?,
        };
        report.param("input", "coherent");
        report.param("alpha", alpha);
        report.param("beta", beta);
        let input = coherent_fock(alpha, n_max, a.tail_tol)?.tensor(&coherent_fock(beta, n_max, a.tail_tol)?);
        let fock = bs_transform(&input, &bs, a.tail_tol)?.state;
        let atom = TwoModeSuperposition::new(vec![TwoModeAtom {
            weight: Complex::new(1.0, 0.0),
            label_a: alpha,
            label_b: beta,
        }])?;
        let jz = synthesize_two_mode(&bs_transform_atoms(&atom, &bs), n_max);
        (n_max, None, fock, jz)
    } else {
        let (pa, pb) = SqueezeParams::interference_pair(a.s, a.phi)?;
        let n_max = match a.n_max {
            Some(n) => n,
            None => suggest_n_max(a.s, a.tail_tol)?,
        };
        let nodes = a.nodes.unwrap_or(n_max + 1);
        report.param("input", "squeezed");
        report.param("s", a.s);
        report.param("phi", pa.phi());
        let fock = squeezed_inputs_output(&pa, &pb, &bs, n_max, a.tail_tol)?.state;
        let jz = interfere_squeezed(&pa, &pb, &bs, nodes, n_max)?;
        (n_max, Some(nodes), fock, jz)
    };
    report.param("n_max", n_max);
    report.param("nodes", nodes.map_or(Cell::Null, Cell::from));

    // The operator engine holds total photon number ≤ n_max only.
    let jz = jz.truncated_total(n_max);
    let mut worst = 0.0f64;
    for j in 0..=n_max {
        for k in 0..=(n_max - j) {
            let (f, z) = (fock.amp(j, k), jz.amp(j, k));
            let diff = (f - z).norm();
            worst = worst.max(diff);
            report.push(vec![j.into(), k.into(), f.into(), z.into(), diff.into()]);
        }
    }
    report.summarize("max_abs_diff", worst);
    report.summarize("fock_norm_sqr", fock.norm_sqr());
    report.summarize("janszky_norm_sqr", jz.norm_sqr());
    report.require(worst <= a.tol);
    Ok(report)
}

pub fn squeeze_interfere(a: &SqueezeArgs) -> Result<Report> {
    check_tol("tol", a.tol)?;
    check_tol("tail-tol", a.tail_tol)?;
    if !(a.s > 0.0 && a.s.is_finite()) {
        return Err(Error::InvalidArgument(format!("s must be positive, got {}", a.s)));
    }
    let bs = a.bs.splitter()?;
    let n_max = match a.n_max {
        Some(n) => n,
        None => suggest_n_max(a.s, a.tail_tol)?,
    };
    let nodes = a.nodes.unwrap_or(n_max + 1);
    let mut report = Report::new(
        "squeeze-interfere",
        a.tol,
        vec![
            col("phi", Kind::Real),
            col("fock_sigma_max", Kind::Real),
            col("fock_entropy", Kind::Real),
            col("janszky_sigma_max", Kind::Real),
            col("janszky_entropy", Kind::Real),
            col("fidelity", Kind::Real),
        ],
    );
    splitter_params(&mut report, &bs);
    report.param("s", a.s);
    report.param("points", a.points as usize);
    report.param("n_max", n_max);
    report.param("nodes", nodes);
    report.param("tail_tol", a.tail_tol);

    let mut worst_fid = 1.0f64;
    for phi in grid(0.0, 2.0 * PI, a.points) {
        let (pa, pb) = SqueezeParams::interference_pair(a.s, phi)?;
        let fock = squeezed_inputs_output(&pa, &pb, &bs, n_max, a.tail_tol)?.state;
        let jz = interfere_squeezed(&pa, &pb, &bs, nodes, n_max)?;
        let sf = schmidt_singular_values(&fock)?;
        let sj = schmidt_singular_values(&jz)?;
        let fid = fidelity(&fock, &jz)?;
        worst_fid = worst_fid.min(fid);
        report.push(vec![
            phi.into(),
            sf[0].into(),
            entanglement_entropy(&sf).into(),
            sj[0].into(),
            entanglement_entropy(&sj).into(),
            fid.into(),
        ]);
    }
    report.summarize("min_fidelity", worst_fid);
    report.require(worst_fid >= 1.0 - a.tol);
    Ok(report)
}

pub fn synth_check(a: &SynthArgs) -> Result<Report> {
    check_tol("tol", a.tol)?;
    let mut report = Report::new(
        "synth-check",
        a.tol,
        vec![
            col("path", Kind::Text),
            col("n", Kind::Integer),
            col("radius", Kind::Real),
            col("s", Kind::Real),
            col("phi", Kind::Real),
            col("max_abs_diff", Kind::Real),
            col("odd_max_abs", Kind::Real),
        ],
    );
    report.param("n_max", a.n_max);
    report.param("nodes", a.nodes);

    let mut worst = 0.0f64;
    let mut spread = 0.0f64;
    for n in 0..=a.max_n {
        let target = FockVector::basis(n, a.n_max)?;
        let mut radii = a.radius.clone();
        let natural = default_circle_radius(n);
        if !radii.contains(&natural) {
            radii.push(natural);
        }
        let mut states: Vec<FockVector> = Vec::new();
        for radius in radii {
            let v = synthesize(
                &circle_number_superposition(n, radius, a.nodes, a.n_max)?,
                a.n_max,
            );
            let diff = v.max_abs_diff(&target)?;
            worst = worst.max(diff);
            for other in &states {
                spread = spread.max(v.max_abs_diff(other)?);
            }
            report.push(vec![
                "circle".into(),
                n.into(),
                radius.into(),
                Cell::Null,
                Cell::Null,
                diff.into(),
                Cell::Null,
            ]);
            states.push(v);
        }
    }

    let mut odd_worst = 0.0f64;
    for &s in &a.s {
        let p = SqueezeParams::new(s, a.phi)?;
        let got = synthesize(&line_squeezed_superposition(&p, a.nodes)?, a.n_max);
        // Amplitudes are compared directly; a short cutoff is not an error here.
        let want = squeezed_vacuum_fock(&p, a.n_max, 1.0)?;
        let diff = got.max_abs_diff(&want)?;
        let odd = got
            .amps()
            .iter()
            .skip(1)
            .step_by(2)
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        worst = worst.max(diff);
        odd_worst = odd_worst.max(odd);
        report.push(vec![
            "line".into(),
            Cell::Null,
            Cell::Null,
            s.into(),
            p.phi().into(),
            diff.into(),
            odd.into(),
        ]);
    }
    report.summarize("max_abs_diff", worst);
    report.summarize("radius_spread", spread);
    report.summarize("odd_max_abs", odd_worst);
    report.require(worst <= a.tol && spread <= a.tol && odd_worst == 0.0);
    Ok(report)
}
