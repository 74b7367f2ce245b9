use std::collections::BTreeMap;
use std::fs;
use std::io::Write;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use positroid::cluster::{mutation_class, MutationClass, Seed, SeedJson};
use positroid::cm::{cluster_tilting_collections, module_flags};
use positroid::combinatorics::{
    connected_components, necklace_from_permutation, parse_permutation, positroid_members_capped,
    DecoratedPermutation, GrassmannNecklace, KSet,
};
use positroid::numeric::{
    format_rational, generic_points, inject_fault, known_identities, sample_cell_point,
    verify_identities,
};
use positroid::plabic::{
    bridge_graph_from_permutation, face_labels, quiver_from_graph, trips, validate_reduced,
    PlabicGraph,
};

use crate::table::{grid, pairs};
use crate::{Config, Format, Spec};

pub struct Output {
    pub text: String,
    /// False when a verification failed; the process then exits with 1.
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

pub fn emit(c: &Config, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json_text<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn unsupported(c: &Config, command: &str) -> Result<Output> {
    bail!("--format {:?} is not available for {command}", c.format)
}

struct Parsed {
    sigma: DecoratedPermutation,
    necklace: GrassmannNecklace,
    graph: PlabicGraph,
}

fn parse(spec: &Spec) -> Result<Parsed> {
    let sigma = parse_permutation(&spec.permutation, spec.n)
        .with_context(|| format!("parsing {:?}", spec.permutation))?;
    let necklace = necklace_from_permutation(&sigma);
    let graph = bridge_graph_from_permutation(&sigma);
    Ok(Parsed {
        sigma,
        necklace,
        graph,
    })
}

fn labels<'a>(sets: impl IntoIterator<Item = &'a KSet>) -> Vec<String> {
    sets.into_iter()
        .map(|s| {
            if s.k() == 0 {
                "∅".to_string()
            } else {
                s.label()
            }
        })
        .collect()
}

fn rng(c: &Config) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(c.rng_seed)
}

#[derive(Serialize)]
struct NecklaceReport {
    permutation: DecoratedPermutation,
    cycles: String,
    n: usize,
    k: usize,
    necklace: GrassmannNecklace,
    positroid_size: usize,
    complement: Vec<KSet>,
    components: Vec<Vec<usize>>,
    alignments: usize,
    dimension: usize,
}

pub fn necklace(c: &Config, spec: &Spec) -> Result<Output> {
    let p = parse(spec)?;
    let members = positroid_members_capped(&p.necklace, c.n_cap)?;
    let r = NecklaceReport {
        cycles: p.sigma.to_cycle_notation(),
        n: p.sigma.n(),
        k: p.sigma.k(),
        positroid_size: members.len(),
        complement: members.complement().into_iter().collect(),
        components: connected_components(&p.necklace)
            .into_iter()
            .map(|b| b.elements)
            .collect(),
        alignments: p.sigma.alignments(),
        dimension: face_labels(&p.graph)?.labels.len(),
        necklace: p.necklace,
        permutation: p.sigma,
    };
    let text = match c.format {
        Format::Json => json_text(&r)?,
        Format::Table => pairs(&[
            ("permutation", r.cycles.clone()),
            ("n, k", format!("{}, {}", r.n, r.k)),
            ("necklace", labels(r.necklace.iter()).join(" ")),
            ("positroid", format!("{} k-sets", r.positroid_size)),
            ("complement", labels(&r.complement).join(" ")),
            ("components", r.components.len().to_string()),
            ("alignments", r.alignments.to_string()),
            ("dimension", r.dimension.to_string()),
        ]),
        Format::Dot => return unsupported(c, "necklace"),
    };
    Ok(Output::ok(text))
}

pub fn positroid(c: &Config, spec: &Spec, collections: bool) -> Result<Output> {
    let p = parse(spec)?;
    let flags = module_flags(&p.necklace, c.n_cap)?;
    let colls = if collections {
        Some(cluster_tilting_collections(&p.necklace, c.n_cap)?)
    } else {
        None
    };
    let text = match c.format {
        Format::Json => match &colls {
            Some(cs) => json_text(&json!({ "modules": flags, "collections": cs }))?,
            None => json_text(&flags)?,
        },
        Format::Table => {
            let mark = |b: bool| if b { "yes" } else { "-" }.to_string();
            let rows: Vec<Vec<String>> = flags
                .iter()
                .map(|f| vec![f.set.label(), mark(f.in_p), mark(f.in_cmb), mark(f.in_gpb)])
                .collect();
            let mut s = grid(&["set", "inP", "inCMB", "inGPB"], &rows);
            if let Some(cs) = &colls {
                s.push_str(&format!(
                    "\n{} maximal non-crossing collections\n",
                    cs.len()
                ));
                for cl in cs {
                    s.push_str(&format!("  {}\n", labels(cl).join(" ")));
                }
            }
            s
        }
        Format::Dot => return unsupported(c, "positroid"),
    };
    Ok(Output::ok(text))
}

pub fn plabic(c: &Config, spec: &Spec, quiver: bool) -> Result<Output> {
    let p = parse(spec)?;
    let g = &p.graph;
    let faces = face_labels(g)?;
    let q = quiver_from_graph(g)?;
    let (ts, _) = trips(g)?;
    let arrows: Vec<(String, String, i64)> = q
        .arrows()
        .into_iter()
        .map(|(a, b, m)| {
            let name = |v: usize| q.label(v).map_or(format!("v{v}"), |l| l.label());
            (name(a), name(b), m)
        })
        .collect();
    let text = match c.format {
        Format::Dot if quiver => q.to_dot(),
        Format::Dot => {
            let map: BTreeMap<usize, String> = faces
                .labels
                .iter()
                .enumerate()
                .map(|(f, l)| (f, l.label()))
                .collect();
            g.to_dot(Some(&map))
        }
        Format::Json => json_text(&json!({
            "permutation": p.sigma,
            "graph": g.to_json(),
            "reduced": validate_reduced(g),
            "faces": faces.labels,
            "boundary_faces": faces.boundary_faces,
            "trips": ts.iter().map(|t| json!({"source": t.source, "target": t.target})).collect::<Vec<_>>(),
            "quiver": {
                "vertices": (0..q.len()).map(|v| json!({
                    "label": q.label(v),
                    "frozen": q.is_frozen(v),
                })).collect::<Vec<_>>(),
                "arrows": q.arrows(),
            },
        }))?,
        Format::Table => {
            let mut s = pairs(&[
                ("permutation", p.sigma.to_cycle_notation()),
                ("vertices", g.vertex_count().to_string()),
                ("edges", g.edges().len().to_string()),
                ("faces", faces.labels.len().to_string()),
                ("reduced", validate_reduced(g).to_string()),
            ]);
            let rows: Vec<Vec<String>> = faces
                .labels
                .iter()
                .enumerate()
                .map(|(f, l)| {
                    let kind = if faces.boundary_faces.contains(&f) {
                        "boundary"
                    } else {
                        "inner"
                    };
                    vec![f.to_string(), l.label(), kind.to_string()]
                })
                .collect();
            s.push('\n');
            s.push_str(&grid(&["face", "label", "kind"], &rows));
            let trip_rows: Vec<Vec<String>> = ts
                .iter()
                .map(|t| vec![t.source.to_string(), t.target.to_string()])
                .collect();
            s.push('\n');
            s.push_str(&grid(&["trip from", "to"], &trip_rows));
            let arrow_rows: Vec<Vec<String>> = arrows
                .iter()
                .map(|(a, b, m)| vec![a.clone(), b.clone(), m.to_string()])
                .collect();
            s.push('\n');
            s.push_str(&grid(&["arrow from", "to", "multiplicity"], &arrow_rows));
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct SeedRecord {
    index: usize,
    pure_plucker: bool,
    #[serde(flatten)]
    seed: SeedJson,
}

fn class_of(p: &Parsed, limit: usize) -> Result<MutationClass> {
    Ok(mutation_class(&Seed::from_graph(&p.graph)?, limit)?)
}

pub fn seeds(c: &Config, spec: &Spec, limit: usize) -> Result<Output> {
    let p = parse(spec)?;
    let class = class_of(&p, limit)?;
    let pure = class.seeds.iter().filter(|s| s.is_pure_plucker()).count();
    let text = match c.format {
        Format::Json => {
            let records: Vec<SeedRecord> = class
                .seeds
                .iter()
                .enumerate()
                .map(|(index, s)| SeedRecord {
                    index,
                    pure_plucker: s.is_pure_plucker(),
                    seed: s.to_json(),
                })
                .collect();
            json_text(&json!({
                "permutation": p.sigma,
                "partial": class.partial,
                "mutations": class.mutations,
                "seeds": records,
            }))?
        }
        Format::Dot => {
            let mut s = String::new();
            for (i, seed) in class.seeds.iter().enumerate() {
                s.push_str(&format!("// seed {i}\n"));
                s.push_str(&seed.quiver().to_dot());
            }
            s
        }
        Format::Table => {
            let first = &class.seeds[0];
            let frozen: Vec<String> = (0..first.len())
                .filter(|&v| first.quiver().is_frozen(v))
                .map(|v| first.display_vars()[v].clone())
                .collect();
            let mut s = pairs(&[
                ("permutation", p.sigma.to_cycle_notation()),
                ("seeds", class.seeds.len().to_string()),
                ("pure Plücker", pure.to_string()),
                ("partial", class.partial.to_string()),
                ("frozen", frozen.join(" ")),
            ]);
            for (i, seed) in class.seeds.iter().enumerate() {
                let kind = if seed.is_pure_plucker() {
                    "Plücker"
                } else {
                    "mixed"
                };
                s.push_str(&format!("\nseed {i} ({kind})\n"));
                let vars = seed.display_vars();
                for v in seed.quiver().mutable_vertices() {
                    let shown = match seed.label(v) {
                        Some(l) => format!("Δ{}", l.label()),
                        None => vars[v].clone(),
                    };
                    s.push_str(&format!("  {shown}\n"));
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}

pub fn verify(c: &Config, spec: &Spec, points: usize, limit: usize, fault: bool) -> Result<Output> {
    let p = parse(spec)?;
    let mut class = class_of(&p, limit)?;
    let extra = known_identities(&p.sigma, &class.seeds[0])?;
    if fault {
        class = inject_fault(&class);
    }
    let mut r = rng(c);
    let cells = (0..points)
        .map(|_| sample_cell_point(&p.graph, &mut r))
        .collect::<positroid::Result<Vec<_>>>()?;
    let (k, n) = (p.necklace.k(), p.necklace.n());
    let generic = if k == 0 || k == n {
        Vec::new()
    } else {
        generic_points(k, n, points, class.seeds[0].symbols(), &mut r)
    };
    let report = verify_identities(&p.necklace, &class, &cells, &generic, &extra)?;
    let text = match c.format {
        Format::Json => json_text(&report)?,
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .identities
                .iter()
                .map(|i| {
                    vec![
                        i.name.clone(),
                        i.points_checked.to_string(),
                        i.failures.len().to_string(),
                    ]
                })
                .collect();
            let mut s = grid(&["identity", "points", "failures"], &rows);
            for i in &report.identities {
                for f in &i.failures {
                    s.push_str(&format!(
                        "FAIL {}: {:?} point {}: {}\n",
                        i.name, f.kind, f.point, f.detail
                    ));
                }
            }
            let verdict = if report.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("\n{verdict}\n"));
            s
        }
        Format::Dot => return unsupported(c, "verify"),
    };
    Ok(Output {
        text,
        passed: report.passed,
    })
}

pub fn sample(c: &Config, spec: &Spec) -> Result<Output> {
    let p = parse(spec)?;
    let point = sample_cell_point(&p.graph, &mut rng(c))?;
    let m = &point.matrix;
    let (k, n) = (m.rows(), m.cols());
    let minors: BTreeMap<String, String> = KSet::all(n, k)
        .iter()
        .map(|i| Ok((i.label(), format_rational(&m.minor(i)?))))
        .collect::<positroid::Result<_>>()?;
    let text = match c.format {
        Format::Json => json_text(&json!({
            "permutation": p.sigma,
            "matrix": m,
            "weights": point.weights.iter().map(format_rational).collect::<Vec<_>>(),
            "minors": minors,
        }))?,
        Format::Table => {
            let rows: Vec<Vec<String>> = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect();
            let header: Vec<String> = (1..=n).map(|j| j.to_string()).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut s = grid(&header, &rows);
            let minor_rows: Vec<Vec<String>> = minors
                .iter()
                .map(|(l, v)| vec![format!("Δ{l}"), v.clone()])
                .collect();
            s.push('\n');
            s.push_str(&grid(&["minor", "value"], &minor_rows));
            s
        }
        Format::Dot => return unsupported(c, "sample"),
    };
    Ok(Output::ok(text))
}
