//! Executes a [`RunConfig`] and writes its artifact with a provenance header.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::config::{Experiment, Format, RunConfig};
use crate::dispersion::{self, DispersionForm};
use crate::error::{LatticeError, Result};
use crate::extended::{Extended, Wavelength};
use crate::field::{FieldSlab, SLAB_CSV_COLUMNS};
use crate::grid::GridSpec;
use crate::kg_lattice::{self, KGParams};
use crate::kinematics::{self, LatticeStep, ParticleState};
use crate::lorentz_int::{self, IntLorentzMatrix, IntMatrix, Letter};
use crate::waves::{self, BeatSpec, WaveForm, WaveSpec};

pub const TOOL: &str = concat!("latwave ", env!("CARGO_PKG_VERSION"));

/// Environment variable that redirects every output file into one directory.
pub const OUTPUT_DIR_ENV: &str = "LATWAVE_OUTPUT_DIR";

pub mod columns {
    pub const DISPERSION_SCAN: &[&str] = &["form", "N", "M", "m0", "residual"];
    pub const LORENTZ_ENUMERATE: &[&str] = &[
        "index", "word_length", "l00", "l01", "l02", "l03", "l10", "l11", "l12", "l13", "l20", "l21", "l22", "l23",
        "l30", "l31", "l32", "l33",
    ];
    pub const LORENTZ_FACTORIZE: &[&str] = &["position", "letter"];
    pub const QUANTITY_VALUE: &[&str] = &["quantity", "value"];
    pub const KINEMATICS_BOOST: &[&str] =
        &["frame", "energy", "px", "py", "pz", "w", "kx", "ky", "kz", "mass_shell_defect"];
}

/// Relations each experiment exercises, recorded in every provenance header.
pub mod relations {
    pub const CAYLEY_DISPERSION: &str = "(1/c^2)(1/(N tau))^2 - (1/(M eps))^2 = m0^2 c^2 / h^2";
    pub const TAN_DISPERSION: &str = "(4/(c^2 tau^2)) tan^2(pi/N) - (4/eps^2) tan^2(pi/M) = m0^2 c^2 / hbar^2";
    pub const TAN_DISPERSION_AS_PRINTED: &str =
        "(1/(c^2 tau^2)) tan^2(pi/N) - (4/eps^2) tan^2(pi/M) = m0^2 c^2 / hbar^2";
    pub const CONTINUUM_DISPERSION: &str = "w^2/c^2 - k^2 = m0^2 c^2 / hbar^2";
    pub const LORENTZ_METRIC: &str = "L^T eta L = eta, eta = diag(1, -1, -1, -1)";
    pub const KAC_WORDS: &str = "L = product of S1, S2, S3, S4";
    pub const EXPONENTIAL_WAVE: &str = "psi(n, j) = exp(2 pi i (n/N - j/M))";
    pub const CAYLEY_WAVE: &str = "psi(n, j) = ((1 + i pi/N)/(1 - i pi/N))^n ((1 - i pi/M)/(1 + i pi/M))^j";
    pub const BEAT_PHASE: &str = "v_phase = (1/T + 1/T')/(1/lambda + 1/lambda')";
    pub const BEAT_GROUP: &str = "v_group = (1/T - 1/T')/(1/lambda - 1/lambda')";
    pub const LATTICE_KG: &str = "-(1/(c^2 tau^2)) Dn Aj psi + (1/eps^2) Dj An psi - (m0 c/hbar)^2 An Aj psi = 0";
    pub const DE_BROGLIE: &str = "w = E/hbar, k = p/hbar";
    pub const BOOST: &str = "E' = gamma (E - v.p), p' = p + ((gamma - 1)(v.p)/v^2 - gamma E/c^2) v";
    pub const MASS_SHELL: &str = "E^2 - p^2 c^2 = m0^2 c^4";
    pub const LATTICE_VELOCITY: &str = "u = (dj eps)/(dn tau), E = m0 c^2/sqrt(1 - u^2/c^2), p = E u/c^2";
    pub const QUANTIZATION: &str = "E = h/(N tau), |p| = h/(M eps)";
}

/// What an experiment produced, before it is written out.
#[derive(Debug, Clone)]
pub enum Body {
    Table { columns: &'static [&'static str], rows: Vec<Vec<String>>, json: Value },
    Slab(FieldSlab),
}

#[derive(Debug, Clone)]
pub struct Artifact {
    pub body: Body,
    pub relations: Vec<&'static str>,
    /// Lines worth showing the user (also recorded in the header).
    pub notes: Vec<String>,
}

fn relation_for(form: DispersionForm) -> &'static str {
    match form {
        DispersionForm::Cayley => relations::CAYLEY_DISPERSION,
        DispersionForm::Exponential => relations::TAN_DISPERSION,
        DispersionForm::ExponentialAsPrinted => relations::TAN_DISPERSION_AS_PRINTED,
        DispersionForm::Continuum => relations::CONTINUUM_DISPERSION,
    }
}

fn wave_relation(form: WaveForm) -> &'static str {
    match form {
        WaveForm::Exponential => relations::EXPONENTIAL_WAVE,
        WaveForm::Cayley => relations::CAYLEY_WAVE,
    }
}

fn default_relation(form: WaveForm) -> DispersionForm {
    match form {
        WaveForm::Exponential => DispersionForm::Exponential,
        WaveForm::Cayley => DispersionForm::Cayley,
    }
}

fn quantity_table(rows: Vec<(&str, String)>, json: Value) -> Body {
    Body::Table {
        columns: columns::QUANTITY_VALUE,
        rows: rows.into_iter().map(|(q, v)| vec![q.to_string(), v]).collect(),
        json,
    }
}

fn mode_mass(
    form: WaveForm,
    period: u32,
    wavelength: Wavelength,
    m0: Option<f64>,
    relation: Option<DispersionForm>,
    grid: &GridSpec,
) -> Result<(f64, DispersionForm)> {
    let relation = relation.unwrap_or_else(|| default_relation(form));
    let m0 = match m0 {
        Some(m) => m,
        None => dispersion::mass_for_mode(relation, period, wavelength, grid)?,
    };
    Ok((m0, relation))
}

fn option_int(v: Option<i64>) -> String {
    v.map_or_else(|| "none".into(), |x| x.to_string())
}

/// Runs the experiment. Module preconditions surface as [`LatticeError::Domain`].
pub fn execute(cfg: &RunConfig) -> Result<Artifact> {
    let grid = cfg.grid;
    grid.validate()?;
    match &cfg.experiment {
        Experiment::DispersionScan(p) => {
            let found = dispersion::solve_modes(p.m0, p.form, p.n_max, p.m_max, p.tol, &grid)?;
            let rows = found
                .iter()
                .map(|s| {
                    vec![
                        s.form.name().to_string(),
                        s.period.to_string(),
                        s.wavelength.to_string(),
                        s.rest_mass.to_string(),
                        s.residual.to_string(),
                    ]
                })
                .collect();
            Ok(Artifact {
                body: Body::Table {
                    columns: columns::DISPERSION_SCAN,
                    rows,
                    json: json!({ "count": found.len(), "solutions": found }),
                },
                relations: vec![relation_for(p.form)],
                notes: vec![format!("modes found: {}", found.len())],
            })
        }
        Experiment::LorentzEnumerate(p) => {
            let spheres = lorentz_int::ball_spheres(p.max_word_len)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for (len, sphere) in spheres.iter().enumerate() {
                for m in sphere {
                    if !lorentz_int::preserves_metric(m.as_matrix()) {
                        return Err(LatticeError::Invariant(format!("enumerated non-Lorentz matrix [{m:?}]")));
                    }
                    let mut row = vec![rows.len().to_string(), len.to_string()];
                    row.extend(m.entries().iter().flatten().map(|v| v.to_string()));
                    rows.push(row);
                    items.push(json!({ "word_length": len, "entries": m.to_json() }));
                }
            }
            Ok(Artifact {
                notes: vec![format!("matrices: {}", items.len())],
                body: Body::Table {
                    columns: columns::LORENTZ_ENUMERATE,
                    rows,
                    json: json!({ "count": items.len(), "matrices": items }),
                },
                relations: vec![relations::LORENTZ_METRIC, relations::KAC_WORDS],
            })
        }
        Experiment::LorentzFactorize(p) => {
            let m = IntMatrix::from_json(&p.matrix)?;
            let l = IntLorentzMatrix::try_from(m)?;
            let word = lorentz_int::factorize(&l)?;
            if lorentz_int::eval_word(&word)? != l {
                return Err(LatticeError::Invariant(format!("factorization {word} does not reproduce the input")));
            }
            let rows = word.0.iter().enumerate().map(|(i, g)| vec![i.to_string(), g.name().to_string()]).collect();
            Ok(Artifact {
                notes: vec![format!("word: {word}")],
                body: Body::Table {
                    columns: columns::LORENTZ_FACTORIZE,
                    rows,
                    json: json!({
                        "matrix": l.to_json(),
                        "word": word.to_string(),
                        "letters": word.names(),
                        "length": word.len(),
                        "s4_count": word.count(Letter::S4),
                        "verified": true,
                    }),
                },
                relations: vec![relations::LORENTZ_METRIC, relations::KAC_WORDS],
            })
        }
        Experiment::WaveSample(p) => {
            let spec = WaveSpec::new(p.form, p.period, p.wavelength)?;
            Ok(Artifact {
                body: Body::Slab(spec.sample(grid, p.n0, p.j0)),
                relations: vec![wave_relation(p.form)],
                notes: vec![],
            })
        }
        Experiment::BeatMeasure(p) => {
            let b = BeatSpec::new(p.period_a, p.period_b, p.wavelength_a, p.wavelength_b)?;
            let v = waves::beat_velocities(&b)?;
            let measured = waves::measure_beat_group_velocity(&b, &grid)?;
            let rel = if v.group == 0.0 { (measured - v.group).abs() } else { ((measured - v.group) / v.group).abs() };
            let phase = v.phase.to_string();
            Ok(Artifact {
                notes: vec![format!("v_group analytic {} measured {measured}", v.group)],
                body: quantity_table(
                    vec![
                        ("v_phase", phase.clone()),
                        ("v_group", v.group.to_string()),
                        ("v_group_measured", measured.to_string()),
                        ("relative_error", rel.to_string()),
                    ],
                    json!({
                        "v_phase": phase,
                        "v_group": v.group,
                        "v_group_measured": measured,
                        "relative_error": rel,
                    }),
                ),
                relations: vec![relations::BEAT_PHASE, relations::BEAT_GROUP],
            })
        }
        Experiment::KgResidual(p) => {
            let spec = WaveSpec::new(p.form, p.period, p.wavelength)?;
            let (m0, relation) = mode_mass(p.form, p.period, p.wavelength, p.m0, p.relation, &grid)?;
            let params = KGParams::new(m0, grid)?;
            let residual = kg_lattice::plane_wave_residual(&spec, &params, (grid.nt, grid.nx))?;
            Ok(Artifact {
                notes: vec![format!("residual {residual:e} at m0 = {m0}")],
                body: quantity_table(
                    vec![("m0", m0.to_string()), ("residual", residual.to_string())],
                    json!({ "m0": m0, "relation": relation.name(), "residual": residual }),
                ),
                relations: vec![relations::LATTICE_KG, wave_relation(p.form), relation_for(relation)],
            })
        }
        Experiment::KgEvolve(p) => {
            let spec = WaveSpec::new(p.form, p.period, p.wavelength)?;
            let (m0, relation) = mode_mass(p.form, p.period, p.wavelength, p.m0, p.relation, &grid)?;
            let params = KGParams::new(m0, grid)?;
            let (slab, deviation) = kg_lattice::evolve_plane_wave(&spec, &params, grid.nx, p.steps)?;
            let mut notes = vec![format!("m0 = {m0}")];
            if p.verify {
                notes.push(format!("max deviation from exact solution: {deviation:e}"));
            }
            Ok(Artifact {
                body: Body::Slab(slab),
                relations: vec![relations::LATTICE_KG, wave_relation(p.form), relation_for(relation)],
                notes,
            })
        }
        Experiment::KinematicsBoost(p) => {
            let s = ParticleState::on_shell(p.m0, p.momentum, grid.c)?;
            let boosted = kinematics::transform_particle(&s, p.velocity, grid.c)?;
            let (w, k) = kinematics::transform_wave(s.energy / grid.hbar, s.momentum.map(|x| x / grid.hbar), p.velocity, grid.c)?;
            let row = |frame: &str, st: &ParticleState, w: f64, k: [f64; 3]| -> Vec<String> {
                let mut r = vec![frame.to_string(), st.energy.to_string()];
                r.extend(st.momentum.iter().map(|x| x.to_string()));
                r.push(w.to_string());
                r.extend(k.iter().map(|x| x.to_string()));
                r.push(st.mass_shell_defect(grid.c).to_string());
                r
            };
            let obj = |st: &ParticleState, w: f64, k: [f64; 3]| {
                json!({ "energy": st.energy, "momentum": st.momentum, "w": w, "k": k,
                        "mass_shell_defect": st.mass_shell_defect(grid.c) })
            };
            let (w0, k0) = (s.energy / grid.hbar, s.momentum.map(|x| x / grid.hbar));
            Ok(Artifact {
                notes: vec![],
                body: Body::Table {
                    columns: columns::KINEMATICS_BOOST,
                    rows: vec![row("original", &s, w0, k0), row("boosted", &boosted, w, k)],
                    json: json!({ "original": obj(&s, w0, k0), "boosted": obj(&boosted, w, k) }),
                },
                relations: vec![relations::DE_BROGLIE, relations::BOOST, relations::MASS_SHELL],
            })
        }
        Experiment::QuantizationCheck(p) => {
            let q = dispersion::quantization_check(LatticeStep::new(p.dn, p.dj), p.m0, &grid, p.tol)?;
            let m_real = q.wavelength_real.to_string();
            Ok(Artifact {
                notes: vec![format!("N = {}, M = {}", option_int(q.period), option_int(q.wavelength))],
                body: quantity_table(
                    vec![
                        ("energy", q.energy.to_string()),
                        ("momentum", q.momentum.to_string()),
                        ("N_real", q.period_real.to_string()),
                        ("M_real", m_real.clone()),
                        ("N", option_int(q.period)),
                        ("M", option_int(q.wavelength)),
                    ],
                    json!({
                        "energy": q.energy,
                        "momentum": q.momentum,
                        "N_real": q.period_real,
                        "M_real": match q.wavelength_real { Extended::Finite(m) => json!(m), Extended::Infinite => json!("inf") },
                        "N": q.period,
                        "M": q.wavelength,
                    }),
                ),
                relations: vec![relations::LATTICE_VELOCITY, relations::QUANTIZATION],
            })
        }
    }
}

/// Hex SHA-256 of the canonical config JSON.
pub fn config_hash(cfg: &RunConfig) -> String {
    Sha256::digest(cfg.canonical_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub config_sha256: String,
    pub experiment: &'static str,
    pub relations: Vec<&'static str>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl Provenance {
    pub fn new(cfg: &RunConfig, artifact: &Artifact) -> Self {
        Provenance {
            tool: TOOL,
            config_sha256: config_hash(cfg),
            experiment: cfg.experiment.kind(),
            relations: artifact.relations.clone(),
            seed: cfg.seed,
            notes: artifact.notes.clone(),
        }
    }

    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("tool: {}", self.tool),
            format!("config_sha256: {}", self.config_sha256),
            format!("experiment: {}", self.experiment),
        ];
        lines.extend(self.relations.iter().map(|r| format!("relation: {r}")));
        lines.push(format!("seed: {}", self.seed.map_or_else(|| "none".into(), |s| s.to_string())));
        lines.extend(self.notes.iter().map(|n| format!("note: {n}")));
        lines
    }
}

/// Where output goes: `None` means stdout. The environment override keeps only the file name.
pub fn resolve_output(path: Option<&Path>) -> Option<PathBuf> {
    let path = path?;
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir).join(path.file_name().unwrap_or(path.as_os_str()))),
        _ => Some(path.to_path_buf()),
    }
}

/// Sidecar file that carries provenance for binary output.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".provenance.json");
    path.with_file_name(name)
}

fn slab_json(slab: &FieldSlab) -> Value {
    let sites: Vec<Value> = (0..slab.nt())
        .flat_map(|n| (0..slab.nx()).map(move |j| (n, j)))
        .map(|(n, j)| {
            let z = slab.get(n, j);
            json!([n, j, z.re, z.im])
        })
        .collect();
    json!({ "nt": slab.nt(), "nx": slab.nx(), "columns": SLAB_CSV_COLUMNS, "sites": sites })
}

fn csv_err(e: csv::Error) -> LatticeError {
    LatticeError::Format(e.to_string())
}

/// Renders the artifact in the requested format. Binary is only defined for slabs.
pub fn render(artifact: &Artifact, provenance: &Provenance, format: Format) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    match (format, &artifact.body) {
        (Format::Csv, Body::Slab(slab)) => slab.write_csv(&mut out, &provenance.header_lines())?,
        (Format::Csv, Body::Table { columns, rows, .. }) => {
            for line in provenance.header_lines() {
                writeln!(out, "# {line}")?;
            }
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(*columns).map_err(csv_err)?;
            for r in rows {
                w.write_record(r).map_err(csv_err)?;
            }
            w.flush()?;
        }
        (Format::Json, body) => {
            let result = match body {
                Body::Slab(slab) => slab_json(slab),
                Body::Table { json, .. } => json.clone(),
            };
            let doc = json!({ "provenance": provenance, "result": result });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| LatticeError::Format(e.to_string()))?;
            out.push(b'\n');
        }
        (Format::Binary, Body::Slab(slab)) => slab.write_binary(&mut out)?,
        (Format::Binary, Body::Table { .. }) => {
            return Err(LatticeError::Format("binary output is only available for field slabs".into()))
        }
    }
    Ok(out)
}

/// Writes rendered bytes (plus the sidecar for binary) and returns the files written.
pub fn write_output(
    bytes: &[u8],
    provenance: &Provenance,
    format: Format,
    path: Option<&Path>,
) -> Result<Vec<PathBuf>> {
    match resolve_output(path) {
        None => {
            if format == Format::Binary {
                return Err(LatticeError::Format("binary output needs an output path".into()));
            }
            io::stdout().lock().write_all(bytes)?;
            Ok(vec![])
        }
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(&p, bytes)?;
            let mut written = vec![p.clone()];
            if format == Format::Binary {
                let side = sidecar_path(&p);
                let mut text = serde_json::to_string_pretty(provenance).map_err(|e| LatticeError::Format(e.to_string()))?;
                text.push('\n');
                fs::write(&side, text)?;
                written.push(side);
            }
            Ok(written)
        }
    }
}
