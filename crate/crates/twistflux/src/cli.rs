//! Command-line front end. Kept thin: parse arguments, call the library,
//! format output. Exit codes: 0 success, 1 domain error, 2 usage error.

use crate::builders;
use crate::curves::{polyline_from_traversal, q_parse, q_string, Traversal, TravStep};
use crate::error::{Error, Result};
use crate::flux::{flux, flux_hom, FluxReport};
use crate::homology::{build_frame_with, HomologyFrame};
use crate::surface::{Side, SquareComplex};
use crate::twists::{pa_certificate, PAResult, TwistWord};
use clap::{Parser, Subcommand};
use num::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "twistflux", version, about = "exact Dehn-twist flux on square-tiled surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a surface file, printing its genus
    Validate { surface: String },
    /// Summarize a surface: squares, genus, faces, cylinders
    Info {
        surface: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the homology frame: rank, basis pairings, per-curve classes
    Homology {
        surface: String,
        #[arg(long)]
        json: bool,
        #[arg(long = "seed-perturbation")]
        seed_perturbation: Option<i64>,
    },
    /// Affine block report and pseudo-Anosov certificate for a twist word
    PaCheck {
        surface: String,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Flux of a twist word along a curve
    Flux {
        surface: String,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'c', long = "curve")]
        curve: String,
        #[arg(long)]
        json: bool,
        #[arg(long = "seed-perturbation")]
        seed_perturbation: Option<i64>,
    },
    /// Full report: action, invariant lattice, flux homomorphism,
    /// certificate and realizability verdicts
    Report {
        surface: String,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'c', long = "curve")]
        curve: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long = "seed-perturbation")]
        seed_perturbation: Option<i64>,
    },
    /// Write the built-in example surfaces, curves and words to files
    Examples {
        #[arg(short = 'o', long = "out", default_value = ".")]
        out: String,
    },
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e);
            1
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Validate { surface } => {
            let c = load_surface(&surface)?;
            println!(
                "ok: {} squares, genus {}, {} faces",
                c.n_squares(),
                c.genus(),
                c.faces().len()
            );
            Ok(())
        }
        Command::Info { surface, json } => {
            let c = load_surface(&surface)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&info_json(&c)).unwrap());
            } else {
                print_info(&c);
            }
            Ok(())
        }
        Command::Homology {
            surface,
            json,
            seed_perturbation,
        } => {
            let c = load_surface(&surface)?;
            let f = build_frame_with(&c, seed_perturbation)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&homology_json(&c, &f)).unwrap()
                );
            } else {
                print_homology(&c, &f);
            }
            Ok(())
        }
        Command::PaCheck {
            surface,
            word,
            json,
        } => {
            let c = load_surface(&surface)?;
            let w = TwistWord::parse(&c, &word)?;
            let pa = pa_certificate(&c, &w);
            if json {
                println!("{}", serde_json::to_string_pretty(&pa_json(&c, &pa)).unwrap());
            } else {
                print_pa(&c, &pa);
            }
            Ok(())
        }
        Command::Flux {
            surface,
            word,
            curve,
            json,
            seed_perturbation,
        } => {
            let c = load_surface(&surface)?;
            let w = TwistWord::parse(&c, &word)?;
            let trav = load_curve(&curve)?;
            let p = polyline_from_traversal(&c, &trav)?;
            let f = build_frame_with(&c, seed_perturbation)?;
            let v = flux(&c, &f, &p, &w)?;
            if json {
                let out = json!({
                    "word": w.display(&c),
                    "raw": q_string(&v.raw),
                    "reduced": q_string(&v.reduced),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("flux = {} (raw {})", q_string(&v.reduced), q_string(&v.raw));
            }
            Ok(())
        }
        Command::Report {
            surface,
            word,
            curve,
            json,
            seed_perturbation,
        } => {
            let c = load_surface(&surface)?;
            let w = TwistWord::parse(&c, &word)?;
            let f = build_frame_with(&c, seed_perturbation)?;
            let report = flux_hom(&c, &f, &w)?;
            let pa = pa_certificate(&c, &w);
            let curve_flux = match curve {
                Some(path) => {
                    let trav = load_curve(&path)?;
                    let p = polyline_from_traversal(&c, &trav)?;
                    Some(flux(&c, &f, &p, &w)?)
                }
                None => None,
            };
            if json {
                let mut out = report_json(&c, &report, &pa);
                if let Some(v) = &curve_flux {
                    out["curve_flux"] = json!({
                        "raw": q_string(&v.raw),
                        "reduced": q_string(&v.reduced),
                    });
                }
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                print_report(&c, &report, &pa);
                if let Some(v) = &curve_flux {
                    println!("curve flux: {} (raw {})", q_string(&v.reduced), q_string(&v.raw));
                }
            }
            Ok(())
        }
        Command::Examples { out } => write_examples(&out),
    }
}

fn load_surface(path: &str) -> Result<SquareComplex> {
    let text = std::fs::read_to_string(path)?;
    SquareComplex::parse(&text)
}

pub fn parse_curve_file(text: &str) -> Result<Traversal> {
    let mut steps = Vec::new();
    let mut in_curve = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        if body == "curve:" {
            in_curve = true;
            continue;
        }
        if !in_curve {
            return Err(Error::Syntax {
                line,
                msg: "expected `curve:` header".into(),
            });
        }
        let inner = body
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(Error::Syntax {
                line,
                msg: format!("expected (square, entry, exit[, t=p/q]), found `{body}`"),
            })?;
        let fields: Vec<&str> = inner.split(',').map(|f| f.trim()).collect();
        if fields.len() != 3 && fields.len() != 4 {
            return Err(Error::Syntax {
                line,
                msg: "expected 3 or 4 fields".into(),
            });
        }
        let square: usize = fields[0].parse().map_err(|_| Error::Syntax {
            line,
            msg: format!("bad square id `{}`", fields[0]),
        })?;
        let side = |s: &str| -> Result<Side> {
            match s {
                "N" => Ok(Side::North),
                "S" => Ok(Side::South),
                "E" => Ok(Side::East),
                "W" => Ok(Side::West),
                other => Err(Error::Syntax {
                    line,
                    msg: format!("bad side `{other}`"),
                }),
            }
        };
        let entry = side(fields[1])?;
        let exit = side(fields[2])?;
        let t = if fields.len() == 4 {
            let spec = fields[3].strip_prefix("t=").ok_or(Error::Syntax {
                line,
                msg: format!("expected t=p/q, found `{}`", fields[3]),
            })?;
            q_parse(spec).ok_or(Error::Syntax {
                line,
                msg: format!("bad rational `{spec}`"),
            })?
        } else {
            crate::curves::q(1, 2)
        };
        steps.push(TravStep {
            square,
            entry,
            exit,
            t,
        });
    }
    if steps.is_empty() {
        return Err(Error::Syntax {
            line: 0,
            msg: "curve file has no steps".into(),
        });
    }
    Ok(Traversal { steps })
}

pub fn curve_file_string(trav: &Traversal) -> String {
    use std::fmt::Write as _;
    let mut s = String::from("curve:\n");
    for st in &trav.steps {
        let side = |sd: Side| match sd {
            Side::North => "N",
            Side::South => "S",
            Side::East => "E",
            Side::West => "W",
        };
        let _ = writeln!(
            s,
            "({}, {}, {}, t={})",
            st.square,
            side(st.entry),
            side(st.exit),
            q_string(&st.t)
        );
    }
    s
}

fn load_curve(path: &str) -> Result<Traversal> {
    let text = std::fs::read_to_string(path)?;
    parse_curve_file(&text)
}

fn write_examples(dir: &str) -> Result<()> {
    let dir = std::path::Path::new(dir);
    std::fs::create_dir_all(dir)?;
    let torus = builders::torus();
    std::fs::write(dir.join("torus.sq"), torus.to_file_string())?;
    let block = builders::genus2_block();
    std::fs::write(dir.join("genus2_block.sq"), block.to_file_string())?;
    let (g5, _, gamma) = builders::genus5_paper();
    std::fs::write(dir.join("genus5.sq"), g5.to_file_string())?;
    std::fs::write(dir.join("gamma.curve"), curve_file_string(&gamma))?;
    std::fs::write(
        dir.join("word.txt"),
        format!("{}\n", builders::paper_word().display(&g5)),
    )?;
    println!(
        "wrote torus.sq, genus2_block.sq, genus5.sq, gamma.curve, word.txt to {}",
        dir.display()
    );
    Ok(())
}

// ---- human-readable printers ----

fn print_info(c: &SquareComplex) {
    println!("squares: {}", c.n_squares());
    println!("genus: {}", c.genus());
    let mut sizes: Vec<usize> = c.faces().iter().map(|f| f.half_size).collect();
    sizes.sort_unstable();
    let faces: Vec<String> = sizes.iter().map(|n| format!("{}-gon", 2 * n)).collect();
    println!("faces: {} ({})", c.faces().len(), faces.join(", "));
    for cyl in c.cylinders() {
        println!(
            "cylinder {}: {} family, width {}, squares {:?}",
            cyl.name,
            cyl.curve.family.name(),
            cyl.width,
            cyl.squares
        );
    }
}

fn print_homology(c: &SquareComplex, f: &HomologyFrame) {
    println!("rank 2g = {}", f.rank);
    println!("basis intersection form:");
    for row in &f.gram {
        let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", entries.join(", "));
    }
    for (curve, class) in &f.core_classes {
        let entries: Vec<String> = class.iter().map(|x| x.to_string()).collect();
        println!("class [{}] = [{}]", c.curve_name(*curve), entries.join(", "));
    }
}

fn print_pa(c: &SquareComplex, pa: &PAResult) {
    for block in &pa.blocks.blocks {
        let letters: Vec<String> = block
            .letters
            .iter()
            .map(|(cr, k)| format!("{}^{}", c.curve_name(*cr), k))
            .collect();
        let shears: Vec<String> = block
            .cylinder_shears
            .iter()
            .map(|(cr, s)| format!("{}:{}", c.curve_name(*cr), s))
            .collect();
        println!(
            "block [{}] ({}): shears {{{}}} -> {}",
            letters.join(" "),
            block.family.name(),
            shears.join(", "),
            if block.uniform {
                format!("uniform, shear {}", block.shear.unwrap())
            } else {
                "non-uniform".into()
            }
        );
    }
    match &pa.matrix {
        Some(m) => {
            println!(
                "matrix: [[{}, {}], [{}, {}]]",
                m[0][0], m[0][1], m[1][0], m[1][1]
            );
            println!("trace: {}", pa.trace.as_ref().unwrap());
        }
        None => println!("no affine product matrix (non-uniform block)"),
    }
    println!("verdict: {}", pa.verdict.as_str());
    if let Some(d) = &pa.dilatation {
        println!(
            "dilatation: root of x^2 - {}x + 1, approx {:.9}",
            d.trace, d.approx
        );
    }
}

fn print_report(c: &SquareComplex, report: &FluxReport, pa: &PAResult) {
    println!("word: {}", report.word.display(c));
    print_pa(c, pa);
    println!("torelli: {}", if report.torelli { "yes" } else { "no" });
    println!("invariant sublattice rank: {}", report.k_basis.len());
    for (class, v) in report.k_basis.iter().zip(&report.fluxes) {
        let entries: Vec<String> = class.iter().map(|x| x.to_string()).collect();
        println!(
            "flux on [{}] = {} (raw {})",
            entries.join(", "),
            q_string(&v.reduced),
            q_string(&v.raw)
        );
    }
    println!("realizability: {}", report.realizability.verdict.as_str());
    for note in &report.realizability.notes {
        println!("  note: {note}");
    }
}

// ---- json encoders (rationals as "p/q" strings, matrices row-major) ----

fn zmat_json(m: &[Vec<num::BigInt>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x|

                            x.to_i64()
                                .map(|v| json!(v))
                                .unwrap_or_else(|| json!(x.to_string())))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn info_json(c: &SquareComplex) -> Value {
    let mut sizes: Vec<usize> = c.faces().iter().map(|f| f.half_size).collect();
    sizes.sort_unstable();
    json!({
        "squares": c.n_squares(),
        "genus": c.genus(),
        "face_half_sizes": sizes,
        "cylinders": c.cylinders().iter().map(|cyl| json!({
            "name": cyl.name,
            "family": cyl.curve.family.name(),
            "width": cyl.width,
            "squares": cyl.squares,
        })).collect::<Vec<_>>(),
    })
}

fn homology_json(c: &SquareComplex, f: &HomologyFrame) -> Value {
    json!({
        "rank": f.rank,
        "gram": zmat_json(&f.gram),
        "classes": f.core_classes.iter().map(|(curve, class)| json!({
            "curve": c.curve_name(*curve),
            "class": class.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn pa_json(c: &SquareComplex, pa: &PAResult) -> Value {
    json!({
        "verdict": pa.verdict.as_str(),
        "blocks": pa.blocks.blocks.iter().map(|b| json!({
            "family": b.family.name(),
            "letters": b.letters.iter().map(|(cr, k)| json!({
                "curve": c.curve_name(*cr), "power": k
            })).collect::<Vec<_>>(),
            "cylinder_shears": b.cylinder_shears.iter().map(|(cr, s)| json!({
                "curve": c.curve_name(*cr), "shear": s
            })).collect::<Vec<_>>(),
            "uniform": b.uniform,
            "shear": b.shear,
        })).collect::<Vec<_>>(),
        "matrix": pa.matrix.as_ref().map(|m| json!([
            [m[0][0].to_string(), m[0][1].to_string()],
            [m[1][0].to_string(), m[1][1].to_string()],
        ])),
        "trace": pa.trace.as_ref().map(|t| t.to_string()),
        "char_poly": pa.dilatation.as_ref().map(|d| json!({
            "x^2": 1, "x": format!("-{}", d.trace), "1": 1
        })),
        "dilatation_approx": pa.dilatation.as_ref().map(|d| d.approx),
    })
}

fn report_json(c: &SquareComplex, report: &FluxReport, pa: &PAResult) -> Value {
    json!({
        "word": report.word.display(c),
        "action": zmat_json(&report.action),
        "torelli": report.torelli,
        "k_basis": report.k_basis.iter().map(|class| {
            class.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "flux": report.k_basis.iter().zip(&report.fluxes).map(|(class, v)| json!({
            "class": class.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "raw": q_string(&v.raw),
            "reduced": q_string(&v.reduced),
        })).collect::<Vec<_>>(),
        "pa": pa_json(c, pa),
        "realizability": {
            "verdict": report.realizability.verdict.as_str(),
            "notes": report.realizability.notes,
        },
    })
}
