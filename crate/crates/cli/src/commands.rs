use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use permadiag_arrangement::{
    all_faces, b_polynomial, bounded_region_count, f_polynomial, mobius_polynomial, region_count,
    vertex_count, TranslationMatrix,
};
use permadiag_core::Perm;
use permadiag_cubic::{build_cubical, hourglass, step_matrix, Dyadic, StepMatrix};
use permadiag_diagonal::{
    cellular_image, facets, generate_patterns, vertex_pairs, DiagonalFace, Variant,
};
use permadiag_shifts::{facets_via_shifts, normalize_to_scp, shift_lattice, Mode};

use crate::checks::{self, Level, Suite};
use crate::export::{Document, Format};
use crate::plot;

#[derive(Parser, Debug)]
#[command(
    name = "permadiag",
    version,
    about = "Multiple braid arrangements and cellular diagonals of permutahedra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiple braid arrangements: Möbius polynomial, face counts, faces.
    Arrangement {
        #[command(subcommand)]
        what: ArrangementCmd,
    },
    /// Cellular diagonals: image, facets, vertex pairs, forbidden patterns.
    Diagonal {
        #[command(subcommand)]
        what: DiagonalCmd,
    },
    /// Shift lattices, reduction to strong complementary pairs, shift closures.
    Shifts {
        #[command(subcommand)]
        what: ShiftsCmd,
    },
    /// Cubical subdivisions, hourglasses and step matrices.
    Cubic {
        #[command(subcommand)]
        what: CubicCmd,
    },
    /// Run the acceptance checks; exits nonzero if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Run only these criteria (1–14).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
    /// Re-emit a JSON document in another format.
    Export {
        /// A document written with `--format json`.
        input: PathBuf,
    },
    /// Static SVG pictures.
    Plot {
        #[arg(value_enum)]
        target: PlotTarget,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        /// Translation matrix: inline JSON rows of rationals such as "3/2", or a file holding them.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value = "su")]
        variant: Variant,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotTarget {
    Arrangement2d,
    Cubical2d,
    #[value(name = "cubical3d-net")]
    Cubical3dNet,
}

#[derive(Args, Debug, Clone)]
pub struct Size {
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum ArrangementCmd {
    /// Coefficients of the Möbius polynomial.
    Mobius {
        #[command(flatten)]
        size: Size,
    },
    /// f- and b-polynomial coefficients.
    Fvec {
        #[command(flatten)]
        size: Size,
    },
    /// Vertices, regions and bounded regions.
    Count {
        #[command(flatten)]
        size: Size,
    },
    /// Every face, as one ordered partition per copy.
    Faces {
        #[command(flatten)]
        size: Size,
        /// Translation matrix: inline JSON rows of rationals such as "3/2", or a file holding them.
        #[arg(long)]
        matrix: Option<String>,
        /// Largest n accepted.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct DiagArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "la")]
    pub variant: Variant,
}

#[derive(Subcommand, Debug)]
pub enum DiagonalCmd {
    /// The whole cellular image.
    Faces {
        #[command(flatten)]
        args: DiagArgs,
        #[arg(long, default_value_t = permadiag_diagonal::DEFAULT_IMAGE_CAP)]
        max_n: usize,
    },
    /// Top-dimensional faces of the image
    Facets {
        #[command(flatten)]
        args: DiagArgs,
        #[arg(long, default_value_t = permadiag_diagonal::DEFAULT_FACET_CAP)]
        max_n: usize,
    },
    /// Vertex pairs of permutations.
    Vertices {
        #[command(flatten)]
        args: DiagArgs,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Forbidden pattern pairs of size k.
    Patterns {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "la")]
        variant: Variant,
    },
}

#[derive(Subcommand, Debug)]
pub enum ShiftsCmd {
    /// The shift lattice above the strong complementary pair of a permutation.
    Lattice {
        #[arg(long)]
        perm: Perm,
        #[arg(long, default_value = "su")]
        variant: Variant,
    },
    /// Shifts taking a facet to a strong complementary pair.
    Normalize {
        /// A facet such as "(12|3, 3|12)".
        #[arg(long)]
        face: DiagonalFace,
        #[arg(long, default_value = "su")]
        variant: Variant,
    },
    /// All facets reached by shifting strong complementary pairs.
    Closure {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "su")]
        variant: Variant,
        #[arg(long, default_value = "block1")]
        mode: Mode,
        #[arg(long, default_value_t = permadiag_shifts::DEFAULT_SHIFT_CAP)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CubicCmd {
    /// Cells of the subdivided n-cube.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "su")]
        variant: Variant,
        #[arg(long, default_value_t = permadiag_cubic::DEFAULT_CUBICAL_CAP)]
        max_n: usize,
    },
    /// The hourglass of a vertex, a permutation of [n+1].
    Hourglass {
        #[arg(long)]
        perm: Perm,
        #[arg(long, default_value = "su")]
        variant: Variant,
    },
    /// The step matrix of a permutation, or of a facet given with --face.
    Stepmatrix {
        #[arg(long, conflicts_with = "face")]
        perm: Option<Perm>,
        #[arg(long)]
        face: Option<DiagonalFace>,
    },
}

/// What a command produced: the bytes to emit and whether it succeeded.
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            success: true,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let doc = match &cli.command {
        Command::Arrangement { what } => arrangement(what)?,
        Command::Diagonal { what } => diagonal(what)?,
        Command::Shifts { what } => shifts(what)?,
        Command::Cubic { what } => cubic(what)?,
        Command::Verify {
            suite,
            level,
            criterion,
        } => return verify(*suite, *level, criterion, cli.format),
        Command::Export { input } => {
            let s = std::fs::read_to_string(input)
                .with_context(|| format!("reading {}", input.display()))?;
            Document::from_json(&s)?
        }
        Command::Plot {
            target,
            ell,
            matrix,
            variant,
        } => {
            let svg = match target {
                PlotTarget::Arrangement2d => {
                    plot::arrangement2d(&load_matrix(matrix.as_ref(), *ell, 3)?)?
                }
                PlotTarget::Cubical2d => plot::cubical2d(*variant)?,
                PlotTarget::Cubical3dNet => plot::cubical3d_net(*variant)?,
            };
            return Ok(Outcome::ok(svg));
        }
    };
    Ok(Outcome::ok(doc.render(cli.format)?))
}

/// Without `--matrix` the default matrix for `ell` copies; otherwise the given
/// one, whose row count overrides `ell`.
fn load_matrix(arg: Option<&String>, ell: usize, n: usize) -> Result<TranslationMatrix> {
    let m: TranslationMatrix = match arg {
        None => TranslationMatrix::default_for(ell, n)?,
        Some(a) if a.trim_start().starts_with('[') => {
            serde_json::from_str(a).with_context(|| format!("parsing matrix {a}"))?
        }
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?;
            serde_json::from_str(&s).with_context(|| format!("parsing matrix in {p}"))?
        }
    };
    if m.n() != n {
        bail!("matrix is for n = {}, expected n = {n}", m.n());
    }
    if !m.is_generic()? {
        bail!("matrix {m} is not generic");
    }
    Ok(m)
}

fn cap(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        bail!("n = {n} exceeds the cap {max_n}; raise it with --max-n");
    }
    Ok(())
}

fn arrangement(cmd: &ArrangementCmd) -> Result<Document> {
    Ok(match cmd {
        ArrangementCmd::Mobius { size } => {
            let p = mobius_polynomial(size.ell, size.n)?;
            let mut d = Document::new(
                "arrangement.mobius",
                &["x_degree", "y_degree", "coefficient"],
            )
            .param("ell", size.ell)
            .param("n", size.n)
            .param("polynomial", &p);
            for ((a, b), c) in p.terms() {
                d.push([a.to_string(), b.to_string(), c.to_string()]);
            }
            d
        }
        ArrangementCmd::Fvec { size } => {
            let (f, b) = (
                f_polynomial(size.ell, size.n)?,
                b_polynomial(size.ell, size.n)?,
            );
            let mut d = Document::new("arrangement.fvec", &["power", "f", "b"])
                .param("ell", size.ell)
                .param("n", size.n);
            let top = f.coeffs().len().max(b.coeffs().len());
            for k in 0..top {
                d.push([
                    k.to_string(),
                    f.coeff(k).to_string(),
                    b.coeff(k).to_string(),
                ]);
            }
            d
        }
        ArrangementCmd::Count { size } => {
            let mut d = Document::new("arrangement.count", &["statistic", "value"])
                .param("ell", size.ell)
                .param("n", size.n);
            d.push([
                "vertices".to_string(),
                vertex_count(size.ell, size.n)?.to_string(),
            ]);
            d.push([
                "regions".to_string(),
                region_count(size.ell, size.n)?.to_string(),
            ]);
            d.push([
                "bounded_regions".to_string(),
                bounded_region_count(size.ell, size.n)?.to_string(),
            ]);
            d
        }
        ArrangementCmd::Faces {
            size,
            matrix,
            max_n,
        } => {
            cap(size.n, *max_n)?;
            let m = load_matrix(matrix.as_ref(), size.ell, size.n)?;
            let mut d = Document::new("arrangement.faces", &["face", "dim"])
                .param("ell", size.ell)
                .param("n", size.n)
                .param("matrix", &m);
            for f in all_faces(&m)? {
                d.push([f.to_string(), f.dim().to_string()]);
            }
            d
        }
    })
}

fn face_rows(kind: &str, n: usize, v: Variant, faces: &[DiagonalFace]) -> Document {
    let mut d = Document::new(kind, &["sigma", "tau", "dim_sigma", "dim_tau"])
        .param("n", n)
        .param("variant", v);
    for f in faces {
        let (p, q) = f.dims();
        d.push([
            f.sigma.to_string(),
            f.tau.to_string(),
            p.to_string(),
            q.to_string(),
        ]);
    }
    d
}

fn diagonal(cmd: &DiagonalCmd) -> Result<Document> {
    Ok(match cmd {
        DiagonalCmd::Faces { args, max_n } => face_rows(
            "diagonal.faces",
            args.n,
            args.variant,
            &cellular_image(args.n, &args.variant.ordering(args.n), *max_n)?,
        ),
        DiagonalCmd::Facets { args, max_n } => face_rows(
            "diagonal.facets",
            args.n,
            args.variant,
            &facets(args.n, args.variant, *max_n)?,
        ),
        DiagonalCmd::Vertices { args, max_n } => {
            let mut d = Document::new("diagonal.vertices", &["u", "w"])
                .param("n", args.n)
                .param("variant", args.variant);
            for (u, w) in vertex_pairs(args.n, args.variant, *max_n)? {
                d.push([u.to_string(), w.to_string()]);
            }
            d
        }
        DiagonalCmd::Patterns { k, variant } => {
            let mut d = Document::new("diagonal.patterns", &["first", "second"])
                .param("k", k)
                .param("variant", variant);
            for p in generate_patterns(*k, *variant)? {
                d.push([p.first.to_string(), p.second.to_string()]);
            }
            d
        }
    })
}

fn shifts(cmd: &ShiftsCmd) -> Result<Document> {
    Ok(match cmd {
        ShiftsCmd::Lattice { perm, variant } => {
            let l = shift_lattice(perm, *variant)?;
            let show = |v: &[usize]| {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let mut d = Document::new("shifts.lattice", &["sigma", "tau", "left", "right"])
                .param("perm", perm)
                .param("variant", variant)
                .param("heights_left", show(&l.heights.left))
                .param("heights_right", show(&l.heights.right));
            let mut order: Vec<usize> = (0..l.len()).collect();
            order.sort_by_key(|&k| {
                (
                    l.coord(k)
                        .left
                        .iter()
                        .chain(&l.coord(k).right)
                        .sum::<usize>(),
                    k,
                )
            });
            for k in order {
                let (f, c) = (&l.elements()[k], l.coord(k));
                d.push([
                    f.sigma.to_string(),
                    f.tau.to_string(),
                    show(&c.left),
                    show(&c.right),
                ]);
            }
            d
        }
        ShiftsCmd::Normalize { face, variant } => {
            let (scp, ops) = normalize_to_scp(face, *variant)?;
            let mut d = Document::new("shifts.normalize", &["step", "shift", "face"])
                .param("face", face)
                .param("variant", variant);
            let mut cur = face.clone();
            d.push(["0".to_string(), String::new(), cur.to_string()]);
            for (k, op) in ops.iter().enumerate() {
                cur = permadiag_shifts::apply_shift(&cur, op)?;
                d.push([(k + 1).to_string(), op.to_string(), cur.to_string()]);
            }
            debug_assert_eq!(cur, scp);
            d
        }
        ShiftsCmd::Closure {
            n,
            variant,
            mode,
            max_n,
        } => {
            let fs = facets_via_shifts(*n, *variant, *mode, *max_n)?;
            face_rows("shifts.closure", *n, *variant, &fs).param("mode", mode)
        }
    })
}

fn show_point(v: &[Dyadic]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn cubic(cmd: &CubicCmd) -> Result<Document> {
    Ok(match cmd {
        CubicCmd::Build { n, variant, max_n } => {
            let cx = build_cubical(*n, *variant, *max_n)?;
            let mut d = Document::new("cubic.cells", &["label", "dim", "lo", "hi"])
                .param("n", n)
                .param("variant", variant);
            let mut cells: Vec<_> = cx.faces().collect();
            cells.sort_by(|a, b| (a.1.dim(), a.0).cmp(&(b.1.dim(), b.0)));
            for (label, c) in cells {
                d.push([
                    label.to_string(),
                    c.dim().to_string(),
                    show_point(&c.lo),
                    show_point(&c.hi),
                ]);
            }
            d
        }
        CubicCmd::Hourglass { perm, variant } => {
            if perm.n() < 2 {
                bail!("hourglasses live in C_n for permutations of [n+1], n ≥ 1");
            }
            let cx = build_cubical(perm.n() - 1, *variant, permadiag_cubic::DEFAULT_CUBICAL_CAP)?;
            let h = hourglass(&cx, perm)?;
            let mut d = Document::new("cubic.hourglass", &["side", "face"])
                .param("perm", perm)
                .param("variant", variant);
            for f in &h.upper {
                d.push(["upper".to_string(), f.to_string()]);
            }
            for f in &h.lower {
                d.push(["lower".to_string(), f.to_string()]);
            }
            d
        }
        CubicCmd::Stepmatrix { perm, face } => {
            let (m, d) = match (perm, face) {
                (Some(w), None) => (
                    step_matrix(w),
                    Document::new("cubic.stepmatrix", &["row", "entries"]).param("perm", w),
                ),
                (None, Some(f)) => (
                    StepMatrix::from_face(f)?,
                    Document::new("cubic.stepmatrix", &["row", "entries"]).param("face", f),
                ),
                _ => bail!("give exactly one of --perm and --face"),
            };
            let mut d = d.param("rows", m.rows()).param("cols", m.cols());
            // top row first, as drawn
            for (k, line) in m.to_string().lines().enumerate() {
                d.push([(m.rows() - k).to_string(), line.to_string()]);
            }
            d
        }
    })
}

fn verify(suite: Suite, level: Level, only: &[u8], format: Format) -> Result<Outcome> {
    let reports = if only.is_empty() {
        checks::verify(suite, level)?
    } else {
        only.iter()
            .map(|&k| checks::run_criterion(k, level))
            .collect::<Result<Vec<_>>>()?
    };
    let success = reports.iter().all(|r| r.passed());
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
        Format::Csv => {
            let mut d = Document::new("verify", &["criterion", "id", "passed", "expected", "got"]);
            for r in &reports {
                for c in &r.checks {
                    d.push([
                        r.criterion.to_string(),
                        c.id.clone(),
                        c.passed.to_string(),
                        c.expected.clone(),
                        c.got.clone(),
                    ]);
                }
            }
            d.render(Format::Csv)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.to_string());
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            s.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
            s
        }
    };
    Ok(Outcome { text, success })
}
