//! Family sweeps: one CSV row per parameter value with σ₁ and every bound.
//!
//! Rows are computed in parallel chunks and written in parameter order; the
//! writer is flushed after each chunk so partial output survives a crash.
//! A failing instance fills the `error` column and the sweep moves on.

use std::io::Write;
use std::time::Instant;

use crate::bounds::{
    certify_sigma1_with, constant_chain, isoperimetric_bounds, isoperimetric_ratio, volume_bound, CertifyOptions,
    ConstantChain,
};
use crate::cayley::{growth_function, GroupDescriptor, DEFAULT_BALL_CAP};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::fmt::format_real;
use crate::par::{self, Execution};
use crate::steklov::{spectrum_with, SolverOptions};

pub const SCHEMA: &str = "steklov-sweep/1";
pub const DEFAULT_GROWTH_N_MAX: u32 = 12;
const TOL: f64 = 1e-9;

pub const COLUMNS: [&str; 16] = [
    "family",
    "param",
    "omega",
    "boundary",
    "closure",
    "vertices",
    "sigma1",
    "sigma1_scaled",
    "volume_bound",
    "boundary_bound",
    "closure_bound",
    "certificate",
    "certificate_branch",
    "iso_ratio",
    "flag",
    "error",
];

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub execution: Execution,
    pub cap: usize,
    pub solver: SolverOptions,
    pub growth_n_max: u32,
    /// Replaces the covering count `c1` in the constant chain.
    pub c1_override: Option<u64>,
    /// Appends a `time_ms` column. Timings differ between runs.
    pub timings: bool,
    /// Rows computed per parallel chunk before writing.
    pub chunk: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            execution: Execution::default(),
            cap: DEFAULT_BALL_CAP,
            solver: SolverOptions::default(),
            growth_n_max: DEFAULT_GROWTH_N_MAX,
            c1_override: None,
            timings: false,
            chunk: 16,
        }
    }
}

/// One sweep row. Bound columns are `None` where they do not apply.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepRecord {
    pub family: String,
    pub param: u32,
    pub omega: usize,
    pub boundary: usize,
    pub closure: usize,
    pub vertices: usize,
    pub sigma1: Option<f64>,
    /// `σ₁·|Ω̄|^{1/D}` for `D >= 2`, `σ₁·|δΩ|` for `D = 1`.
    pub sigma1_scaled: Option<f64>,
    pub volume_bound: Option<f64>,
    pub boundary_bound: Option<f64>,
    pub closure_bound: Option<f64>,
    pub certificate: Option<f64>,
    pub certificate_branch: Option<String>,
    pub iso_ratio: Option<f64>,
    /// Bound columns that σ₁ exceeds by more than `1e-9`, `;`-separated.
    pub flag: String,
    pub error: Option<String>,
    pub time_ms: Option<f64>,
    /// Certificate below σ₁: a soundness failure.
    pub unsound: bool,
}

impl SweepRecord {
    pub fn csv_fields(&self, timings: bool) -> Vec<String> {
        let real = |x: Option<f64>| x.map(format_real).unwrap_or_default();
        let mut out = vec![
            self.family.clone(),
            self.param.to_string(),
            self.omega.to_string(),
            self.boundary.to_string(),
            self.closure.to_string(),
            self.vertices.to_string(),
            real(self.sigma1),
            real(self.sigma1_scaled),
            real(self.volume_bound),
            real(self.boundary_bound),
            real(self.closure_bound),
            real(self.certificate),
            self.certificate_branch.clone().unwrap_or_default(),
            real(self.iso_ratio),
            self.flag.clone(),
            self.error.clone().unwrap_or_default(),
        ];
        if timings {
            out.push(real(self.time_ms));
        }
        out
    }
}

/// Constant chain for a host, honouring the covering-count override.
pub fn host_chain(desc: &GroupDescriptor, opts: &SweepOptions) -> Result<ConstantChain> {
    let chain = constant_chain(desc, &growth_function(desc, opts.growth_n_max, opts.cap)?)?;
    Ok(match opts.c1_override {
        Some(c1) => chain.with_covering_count(c1),
        None => chain,
    })
}

/// Computes one row. Instance errors land in the `error` field.
pub fn sweep_record(family: &Family, param: u32, chain: Option<&ConstantChain>, opts: &SweepOptions) -> SweepRecord {
    let start = Instant::now();
    let mut rec = SweepRecord { family: family.to_string(), param, ..Default::default() };
    if let Err(e) = fill_record(&mut rec, family, param, chain, opts) {
        rec.error = Some(e.to_string());
    }
    if opts.timings {
        rec.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rec
}

fn fill_record(
    rec: &mut SweepRecord,
    family: &Family,
    param: u32,
    chain: Option<&ConstantChain>,
    opts: &SweepOptions,
) -> Result<()> {
    let spec = family.spec(param, opts.cap)?;
    let g = match &spec {
        Some(s) => s.induce()?,
        None => family.build(param, opts.cap)?,
    };
    rec.boundary = g.boundary().len();
    rec.omega = g.interior().len();
    rec.closure = g.len();
    rec.vertices = g.len();

    let sigma1 = spectrum_with(&g, &opts.solver)?.sigma1()?;
    rec.sigma1 = Some(sigma1);
    let mut exceeded = Vec::new();
    let mut check = |name: &str, bound: f64| {
        if sigma1 > bound + TOL {
            exceeded.push(name.to_string());
        }
    };

    if let (Some(spec), Some(chain)) = (&spec, chain) {
        let dim = chain.growth_order;
        rec.sigma1_scaled = Some(if dim == 1 {
            sigma1 * rec.boundary as f64
        } else {
            sigma1 * (rec.closure as f64).powf(1.0 / dim as f64)
        });
        rec.iso_ratio = Some(isoperimetric_ratio(spec, dim).ratio);

        let t1 = volume_bound(&g, chain)?;
        check("volume_bound", t1);
        rec.volume_bound = Some(t1);

        let cb = isoperimetric_bounds(&g, chain)?;
        check("boundary_bound", cb.boundary_bound);
        rec.boundary_bound = Some(cb.boundary_bound);
        if let Some(c2) = cb.closure_bound {
            check("closure_bound", c2);
            rec.closure_bound = Some(c2);
        }

        let copts = CertifyOptions { execution: Execution::Sequential, cap: opts.cap };
        let cert = certify_sigma1_with(&g, spec.host(), chain, &copts)?;
        if !cert.is_sound(sigma1) {
            exceeded.push("certificate".into());
            rec.unsound = true;
        }
        rec.certificate = Some(cert.certified_bound);
        rec.certificate_branch =
            Some(serde_json::to_value(cert.branch).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default());
    }
    rec.flag = exceeded.join(";");
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub errors: usize,
    pub flagged: usize,
    pub unsound: usize,
}

/// Runs the sweep and writes CSV to `out`: a `# schema:` comment line, the
/// header, then one row per parameter in increasing order.
pub fn run_sweep<W: Write>(family: &Family, params: &[u32], opts: &SweepOptions, out: W) -> Result<SweepSummary> {
    let chain = family.host()?.map(|h| host_chain(&h, opts)).transpose()?;
    let mut raw = out;
    writeln!(raw, "# schema: {SCHEMA}").map_err(io_err)?;
    let mut w = csv::Writer::from_writer(raw);
    let mut header: Vec<&str> = COLUMNS.to_vec();
    if opts.timings {
        header.push("time_ms");
    }
    w.write_record(&header).map_err(csv_err)?;

    let mut summary = SweepSummary::default();
    for chunk in params.chunks(opts.chunk.max(1)) {
        let rows = par::map(opts.execution, chunk, |&p| sweep_record(family, p, chain.as_ref(), opts));
        for rec in rows {
            summary.rows += 1;
            summary.errors += usize::from(rec.error.is_some());
            summary.flagged += usize::from(!rec.flag.is_empty());
            summary.unsound += usize::from(rec.unsound);
            w.write_record(rec.csv_fields(opts.timings)).map_err(csv_err)?;
        }
        w.flush().map_err(io_err)?;
    }
    Ok(summary)
}

/// Rows without writing, in parameter order.
pub fn sweep_records(family: &Family, params: &[u32], opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    let chain = family.host()?.map(|h| host_chain(&h, opts)).transpose()?;
    Ok(par::map(opts.execution, params, |&p| sweep_record(family, p, chain.as_ref(), opts)))
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_family_rows() {
        let recs = sweep_records(&Family::TwoPoint, &[1, 2, 3, 7], &SweepOptions::default()).unwrap();
        for r in &recs {
            assert!((r.sigma1.unwrap() - r.param as f64).abs() < 1e-9);
            assert_eq!(r.boundary, 2);
            assert!(r.volume_bound.is_none() && r.error.is_none());
        }
    }

    #[test]
    fn csv_is_ordered_and_versioned() {
        let mut buf = Vec::new();
        let fam = Family::ZdBall { dim: 2 };
        let s = run_sweep(&fam, &[1, 2, 3], &SweepOptions { chunk: 2, ..Default::default() }, &mut buf).unwrap();
        assert_eq!(s, SweepSummary { rows: 3, errors: 0, flagged: 0, unsound: 0 });
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# schema: steklov-sweep/1");
        assert_eq!(lines[1], COLUMNS.join(","));
        assert!(lines[2].starts_with("zd_ball_2,1,1,4,5,5,1,"));
        assert!(lines[4].starts_with("zd_ball_2,3,"));
    }

    #[test]
    fn errors_do_not_stop_the_sweep() {
        let recs = sweep_records(&Family::ZdBox { dim: 2 }, &[0, 2], &SweepOptions::default()).unwrap();
        assert!(recs[0].error.is_some());
        assert!(recs[1].error.is_none() && recs[1].sigma1.unwrap() > 0.0);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let fam = Family::ZdBox { dim: 3 };
        let seq = SweepOptions { execution: Execution::Sequential, ..Default::default() };
        let a = sweep_records(&fam, &[2, 3], &seq).unwrap();
        let b = sweep_records(&fam, &[2, 3], &SweepOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
