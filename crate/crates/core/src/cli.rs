//! Command-line front end for the `liecone` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::fmt_q;
use crate::eigencone::{
    generate_inequalities_capped, parse_weights, verify_projection, verify_subeigencone, Tier,
    EIGENCONE_SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::isogr::{BcTransfer, CinC};
use crate::rootsys::{parse_group, CartanType, EmbeddingCase, RootSystem, SubsystemEmbedding};
use crate::schubert::{CohomClass, FlagVariety, TupleFilter, DEFAULT_TUPLE_CAP};
use crate::weyl::{coset_table, dual_rep, embed_coset, minimal_coset_reps, ParabolicSpec, DEFAULT_GROUP_CAP};

pub const CLI_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "liecone", version, about = "Root systems, Schubert calculus and eigencone inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Directory for cached structure constants.
    #[arg(long, global = true, env = "LIECONE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Largest number of tuples a product enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_CAP)]
    pub tuple_cap: u128,
    /// Largest representation dimension the oracle may build.
    #[arg(long, global = true, default_value_t = crate::oracle::DEFAULT_DIM_CAP)]
    pub dim_cap: u128,
    /// Largest scaling factor tried by the saturation search.
    #[arg(long, global = true, default_value_t = crate::oracle::DEFAULT_NMAX)]
    pub nmax: usize,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroupArgs {
    /// `C3`, `Sp(6)`, `SO(7)`, `G2`, ... or a bare type letter with `--rank`.
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

impl GroupArgs {
    pub fn resolve(&self) -> Result<RootSystem> {
        let (kind, rank) = match (parse_group(&self.group), self.rank) {
            (Ok((k, r)), None) => (k, r),
            (Ok((k, r)), Some(x)) if x == r => (k, r),
            (Ok(_), Some(x)) => return Err(Error::usage(format!("--rank {x} contradicts --group {}", self.group))),
            (Err(_), Some(r)) => (self.group.parse::<CartanType>()?, r),
            (Err(e), None) => return Err(e),
        };
        RootSystem::build(kind, rank)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system data.
    Roots(GroupArgs),
    /// Minimal coset representatives of a maximal parabolic, with duals.
    Cosets {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        parabolic: usize,
    },
    /// Schubert products on `G/P`; without `--words` prints the whole ring.
    Multiply {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        parabolic: usize,
        /// Comma-separated Weyl words, `e` for the identity.
        #[arg(long)]
        words: Option<String>,
    },
    /// Eigencone inequalities.
    Inequalities {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "levi")]
        tier: Tier,
    },
    /// Membership of a tuple of dominant weights.
    Membership {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "levi")]
        tier: Tier,
        /// Weights as `a,b;c,d;...`; for rank 1 `a,b,c` also works.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Also run the tensor-product oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Verification drivers.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Embedding family: c-in-c, b-in-b, d-chain, sl2-in-g2 or g2-in-f4.
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Type letter for the projection driver (`C` or `B`).
        #[arg(long, default_value = "C")]
        kind: String,
        /// Grid bound for the projection driver.
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Reproduces the coset tables.
    Tables {
        #[arg(value_enum)]
        which: TableSet,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTarget {
    /// Sub-eigencone criterion for an embedding family.
    ThmMain,
    /// B/C projection on a grid.
    Projection,
    /// Levi-movable unit products of `Sp(2r)` and `SO(2r+1)` correspond.
    BcDuality,
    /// Expected-dimension identities for `Sp(2s) ⊆ Sp(2r)`.
    ExpectedDim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableSet {
    G2f4,
}

/// Rows for csv and table output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let esc = |s: &String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            out.push_str(&row.iter().map(esc).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (i, c) in row.iter().enumerate() {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let mut out = String::new();
        for (n, row) in std::iter::once(&self.header).chain(&self.rows).enumerate() {
            let cells: Vec<String> =
                row.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
            if n == 0 {
                let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
                out.push_str(&rule.join("  "));
                out.push('\n');
            }
        }
        out
    }
}

/// Result of one command: the JSON payload, tabular rows, and whether a
/// verification passed.
pub struct Outcome {
    pub payload: Value,
    pub tables: Vec<(String, Table)>,
    pub passed: bool,
}

impl Outcome {
    fn ok(payload: Value, tables: Vec<(String, Table)>) -> Self {
        Outcome { payload, tables, passed: true }
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn parse_words(fv: &FlagVariety, words: &str) -> Result<Vec<usize>> {
    words.split(',').map(|w| fv.element(w.trim())).collect()
}

fn flag_variety(rs: &RootSystem, p: usize, cli: &Cli) -> Result<FlagVariety> {
    let fv = FlagVariety::new(rs, p)?;
    fv.structure_constants_cached(cli.cache_dir.as_deref())?;
    Ok(fv)
}

fn cmd_roots(group: &GroupArgs) -> Result<Outcome> {
    let rs = group.resolve()?;
    let doc = rs.to_doc();
    let mut t = Table::new(&["index", "height", "simple", "coroot"]);
    for (i, b) in rs.positive_roots().iter().enumerate() {
        let fmt = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        t.push(vec![
            (i + 1).to_string(),
            b.iter().sum::<i64>().to_string(),
            fmt(b),
            fmt(&rs.coroot_coords(b)),
        ]);
    }
    Ok(Outcome::ok(to_value(&doc)?, vec![("positive roots".into(), t)]))
}

fn cmd_cosets(group: &GroupArgs, p: usize) -> Result<Outcome> {
    let rs = group.resolve()?;
    let doc = coset_table(&ParabolicSpec::maximal(&rs, p)?, DEFAULT_GROUP_CAP)?;
    let mut t = Table::new(&["w", "length", "dual"]);
    for row in &doc.rows {
        t.push(vec![row.word.clone(), row.length.to_string(), row.dual.clone()]);
    }
    Ok(Outcome::ok(to_value(&doc)?, vec![(format!("{}/P{p}", rs.label()), t)]))
}

fn cmd_multiply(cli: &Cli, group: &GroupArgs, p: usize, words: Option<&str>) -> Result<Outcome> {
    let rs = group.resolve()?;
    let fv = flag_variety(&rs, p, cli)?;
    match words {
        None => {
            let doc = fv.to_doc()?;
            let mut t = Table::new(&["u", "v", "product"]);
            for pr in &doc.products {
                let terms: Vec<String> = pr.terms.iter().map(|(w, c)| format!("{c}*[{w}]")).collect();
                t.push(vec![pr.u.clone(), pr.v.clone(), terms.join(" + ")]);
            }
            Ok(Outcome::ok(to_value(&doc)?, vec![(fv.label(), t)]))
        }
        Some(ws) => {
            let idx = parse_words(&fv, ws)?;
            let mut acc = CohomClass::basis(fv.unit());
            for &i in &idx {
                acc = fv.multiply(&acc, &CohomClass::basis(i))?;
            }
            let mut t = Table::new(&["word", "codim", "coefficient"]);
            let mut terms = Vec::new();
            for (&i, c) in &acc.coeffs {
                t.push(vec![fv.word(i), fv.codim(i).to_string(), fmt_q(c)]);
                terms.push(json!({"word": fv.word(i), "codim": fv.codim(i), "coefficient": fmt_q(c)}));
            }
            let payload = json!({
                "variety": fv.label(),
                "factors": idx.iter().map(|&i| fv.word(i)).collect::<Vec<_>>(),
                "terms": terms,
            });
            Ok(Outcome::ok(payload, vec![(fv.label(), t)]))
        }
    }
}

fn inequality_table(sys: &crate::eigencone::IneqSystem) -> Table {
    let mut t = Table::new(&["parabolic", "words", "normals", "scale", "multiplicity"]);
    for q in &sys.inequalities {
        let normals: Vec<String> = q
            .normals
            .iter()
            .map(|l| l.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        t.push(vec![
            q.parabolic.to_string(),
            q.words.join(" "),
            normals.join(" | "),
            fmt_q(&q.scale),
            q.multiplicity.to_string(),
        ]);
    }
    t
}

fn cmd_inequalities(cli: &Cli, group: &GroupArgs, n: usize, tier: Tier) -> Result<Outcome> {
    let rs = group.resolve()?;
    let sys = generate_inequalities_capped(&rs, n, tier, cli.tuple_cap)?;
    let t = inequality_table(&sys);
    Ok(Outcome::ok(to_value(&sys.to_doc())?, vec![(format!("{} n={n} tier={tier}", sys.label()), t)]))
}

fn read_tuple(s: &str, rank: usize, n: usize) -> Result<Vec<crate::Weight>> {
    if !s.contains(';') && rank == 1 {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() == n {
            return parse_weights(&parts.join(";"), 1);
        }
    }
    parse_weights(s, rank)
}

fn cmd_membership(cli: &Cli, group: &GroupArgs, n: usize, tier: Tier, weights: &str, oracle: bool) -> Result<Outcome> {
    let rs = group.resolve()?;
    let lams = read_tuple(weights, rs.rank(), n)?;
    let sys = generate_inequalities_capped(&rs, n, tier, cli.tuple_cap)?;
    let m = sys.membership(&lams)?;
    let violated: Vec<Value> = m.violated.iter().map(|&i| to_value(&sys.inequalities[i].to_doc())).collect::<Result<_>>()?;
    let mut payload = json!({
        "group": sys.label(),
        "n": n,
        "tier": tier,
        "weights": lams.iter().map(|l| l.0.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "member": m.member,
        "violated": violated,
    });
    let mut t = Table::new(&["member", "violated"]);
    t.push(vec![
        if m.member { "in-cone".into() } else { "not-in-cone".into() },
        m.violated.len().to_string(),
    ]);
    if oracle {
        let ints: Vec<Vec<i64>> = lams
            .iter()
            .map(|l| l.0.iter().map(|x| crate::arith::to_i64(x).ok_or_else(|| Error::usage("oracle needs integral weights"))).collect())
            .collect::<Result<_>>()?;
        let o = crate::oracle::Oracle::with_cap(&rs, cli.dim_cap)?;
        let found = o.saturated_search(&ints, cli.nmax)?;
        payload["oracle"] = json!({"nmax": cli.nmax, "first_n": found});
        t.header.push("oracle_n".into());
        t.rows[0].push(found.map(|x| x.to_string()).unwrap_or_else(|| "none".into()));
    }
    Ok(Outcome::ok(payload, vec![("membership".into(), t)]))
}

fn need(x: Option<usize>, name: &str) -> Result<usize> {
    x.ok_or_else(|| Error::usage(format!("--{name} is required")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    target: VerifyTarget,
    case: Option<&str>,
    r: Option<usize>,
    s: Option<usize>,
    k: Option<usize>,
    n: usize,
    kind: &str,
    bound: i64,
) -> Result<Outcome> {
    match target {
        VerifyTarget::ThmMain => {
            let base: EmbeddingCase = case.ok_or_else(|| Error::usage("--case is required"))?.parse()?;
            let case = match base {
                EmbeddingCase::CInC { .. } | EmbeddingCase::BInB { .. } => base.with_ranks(need(r, "r")?, need(s, "s")?),
                EmbeddingCase::DChain { .. } => base.with_ranks(need(r, "r")?, 0),
                other => other,
            };
            let rep = verify_subeigencone(case, n, cli.tuple_cap)?;
            let mut tables = Vec::new();
            for p in &rep.pairs {
                let mut t = Table::new(&["sub tuple", "ambient tuple", "m", "theta", "ok"]);
                for row in &p.rows {
                    t.push(vec![
                        row.sub_words.join(" "),
                        row.ambient_words.join(" "),
                        row.ambient_multiplicity.to_string(),
                        row.ambient_theta.to_string(),
                        (row.point && row.levi).to_string(),
                    ]);
                }
                tables.push((format!("Q{} -> P{} ({} -> {})", p.q, p.p, p.sub, p.ambient), t));
            }
            Ok(Outcome { payload: to_value(&rep)?, tables, passed: rep.ok() })
        }
        VerifyTarget::Projection => {
            let kind: CartanType = kind.parse()?;
            let rep = verify_projection(kind, need(r, "r")?, need(s, "s")?, n, bound)?;
            let mut t = Table::new(&["check", "count"]);
            for (name, v) in [
                ("grid points", rep.grid_points),
                ("grid members", rep.grid_members),
                ("facet points", rep.facet_points),
                ("violations", rep.violations),
                ("section failures", rep.section_failures),
                ("invariance checks", rep.invariance_checks),
                ("invariance failures", rep.invariance_failures),
            ] {
                t.push(vec![name.into(), v.to_string()]);
            }
            Ok(Outcome { payload: to_value(&rep)?, tables: vec![("projection".into(), t)], passed: rep.ok() })
        }
        VerifyTarget::BcDuality => {
            let r = need(r, "r")?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=r).collect(),
            };
            let mut reps = Vec::new();
            let mut t = Table::new(&["k", "C side", "B side", "bijective", "duals"]);
            for k in ks {
                let rep = BcTransfer::new(r, k)?.check(n, cli.tuple_cap)?;
                t.push(vec![
                    k.to_string(),
                    rep.checked.to_string(),
                    rep.b_side.to_string(),
                    rep.bijective.to_string(),
                    rep.duals_match.to_string(),
                ]);
                reps.push(rep);
            }
            let passed = reps.iter().all(|x| x.bijective && x.duals_match && x.failures.is_empty());
            Ok(Outcome { payload: to_value(&reps)?, tables: vec![("B/C".into(), t)], passed })
        }
        VerifyTarget::ExpectedDim => {
            let (r, s) = (need(r, "r")?, need(s, "s")?);
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=s).collect(),
            };
            let mut rows = Vec::new();
            let mut t = Table::new(&["k", "tuple", "lift", "theta", "theta_m", "theta_h", "e_g", "e_m", "ok"]);
            for k in ks {
                let c = CinC::new(r, s, k)?;
                for tup in c.m.point_product_tuples(n, TupleFilter::All, cli.tuple_cap)? {
                    let rep = c.expected_dim_check(&tup.elems)?;
                    t.push(vec![
                        k.to_string(),
                        rep.tuple.join(" "),
                        rep.lifted.join(" "),
                        rep.theta.to_string(),
                        rep.theta_m.to_string(),
                        rep.theta_h.to_string(),
                        rep.expected_dim_g.to_string(),
                        rep.expected_dim_m.to_string(),
                        rep.ok().to_string(),
                    ]);
                    rows.push(rep);
                }
            }
            let passed = rows.iter().all(|x| x.ok());
            Ok(Outcome { payload: to_value(&rows)?, tables: vec![("expected dimension".into(), t)], passed })
        }
    }
}

/// The three coset tables for `G2 ⊆ F4`: `G2` cells with duals, their
/// images in `F4`, and the `F4` duals of the images.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct G2F4Tables {
    pub g2_cells: Vec<[String; 4]>,
    pub images: Vec<[String; 4]>,
    pub f4_cells: Vec<[String; 4]>,
}

pub fn g2f4_tables() -> Result<G2F4Tables> {
    let e = SubsystemEmbedding::build(EmbeddingCase::G2InF4)?;
    let mut cols = Vec::new();
    for &(q, p) in &e.matched {
        let pq = ParabolicSpec::maximal(&e.sub, q)?;
        let pp = ParabolicSpec::maximal(&e.ambient, p)?;
        let mut col = Vec::new();
        for w in minimal_coset_reps(&pq, DEFAULT_GROUP_CAP)? {
            let img = embed_coset(&e, &w, &pp)?;
            col.push([
                w.word_string(),
                dual_rep(&w, &pq)?.word_string(),
                img.word_string(),
                dual_rep(&img, &pp)?.word_string(),
            ]);
        }
        cols.push(col);
    }
    if cols.len() != 2 || cols[0].len() != cols[1].len() {
        return Err(Error::Verification("G2 coset columns have different lengths".into()));
    }
    let zip = |a: usize, b: usize| -> Vec<[String; 4]> {
        cols[0]
            .iter()
            .zip(&cols[1])
            .map(|(x, y)| [x[a].clone(), x[b].clone(), y[a].clone(), y[b].clone()])
            .collect()
    };
    Ok(G2F4Tables { g2_cells: zip(0, 1), images: zip(0, 2), f4_cells: zip(2, 3) })
}

fn cmd_tables(which: TableSet) -> Result<Outcome> {
    match which {
        TableSet::G2f4 => {
            let t = g2f4_tables()?;
            let mk = |header: [&str; 4], rows: &[[String; 4]]| {
                let mut tab = Table::new(&header);
                for r in rows {
                    tab.push(r.to_vec());
                }
                tab
            };
            let tables = vec![
                ("G2 Schubert cells".to_string(), mk(["w in W^Q1", "dual", "w in W^Q2", "dual"], &t.g2_cells)),
                (
                    "G2 to F4 Weyl data".to_string(),
                    mk(["w in W^Q1", "image in W^P4", "w in W^Q2", "image in W^P1"], &t.images),
                ),
                ("F4 Schubert cells".to_string(), mk(["w in W^P4", "dual", "w in W^P1", "dual"], &t.f4_cells)),
            ];
            Ok(Outcome::ok(to_value(&t)?, tables))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Roots(_) => "roots",
        Command::Cosets { .. } => "cosets",
        Command::Multiply { .. } => "multiply",
        Command::Inequalities { .. } => "inequalities",
        Command::Membership { .. } => "membership",
        Command::Verify { .. } => "verify",
        Command::Tables { .. } => "tables",
    }
}

fn resolved_config(cli: &Cli) -> Value {
    let args = match &cli.command {
        Command::Roots(g) => json!({"group": g.group, "rank": g.rank}),
        Command::Cosets { group, parabolic } => json!({"group": group.group, "rank": group.rank, "parabolic": parabolic}),
        Command::Multiply { group, parabolic, words } => {
            json!({"group": group.group, "rank": group.rank, "parabolic": parabolic, "words": words})
        }
        Command::Inequalities { group, n, tier } => json!({"group": group.group, "rank": group.rank, "n": n, "tier": tier}),
        Command::Membership { group, n, tier, weights, oracle } => {
            json!({"group": group.group, "rank": group.rank, "n": n, "tier": tier, "weights": weights, "oracle": oracle})
        }
        Command::Verify { target, case, r, s, k, n, kind, bound } => {
            json!({"target": target, "case": case, "r": r, "s": s, "k": k, "n": n, "kind": kind, "bound": bound})
        }
        Command::Tables { which } => json!({"which": which}),
    };
    json!({
        "command": command_name(&cli.command),
        "args": args,
        "format": cli.format,
        "cache_dir": cli.cache_dir,
        "tuple_cap": cli.tuple_cap.to_string(),
        "dim_cap": cli.dim_cap.to_string(),
        "nmax": cli.nmax,
    })
}

/// Runs a parsed command, writing the report to `out`. A failed
/// verification is reported and then returned as an error.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let outcome = match &cli.command {
        Command::Roots(g) => cmd_roots(g)?,
        Command::Cosets { group, parabolic } => cmd_cosets(group, *parabolic)?,
        Command::Multiply { group, parabolic, words } => cmd_multiply(cli, group, *parabolic, words.as_deref())?,
        Command::Inequalities { group, n, tier } => cmd_inequalities(cli, group, *n, *tier)?,
        Command::Membership { group, n, tier, weights, oracle } => {
            cmd_membership(cli, group, *n, *tier, weights, *oracle)?
        }
        Command::Verify { target, case, r, s, k, n, kind, bound } => {
            cmd_verify(cli, *target, case.as_deref(), *r, *s, *k, *n, kind, *bound)?
        }
        Command::Tables { which } => cmd_tables(*which)?,
    };
    let config = resolved_config(cli);
    match cli.format {
        Format::Json => {
            let doc = json!({
                "schema_version": CLI_SCHEMA_VERSION,
                "eigencone_schema_version": EIGENCONE_SCHEMA_VERSION,
                "config": config,
                "passed": outcome.passed,
                "result": outcome.payload,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv | Format::Table => {
            writeln!(out, "# liecone schema {CLI_SCHEMA_VERSION}")?;
            writeln!(out, "# config {}", serde_json::to_string(&config)?)?;
            for (title, t) in &outcome.tables {
                writeln!(out, "# {title}")?;
                let body = if cli.format == Format::Csv { t.to_csv() } else { t.to_text() };
                write!(out, "{body}")?;
            }
            if !outcome.passed {
                writeln!(out, "# verification FAILED")?;
            }
        }
    }
    if outcome.passed {
        Ok(())
    } else {
        Err(Error::Verification(format!("{} check failed", command_name(&cli.command))))
    }
}

/// Parses `args`, runs, and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "liecone: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("liecone").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn membership_zero_tuple() {
        let (code, out, _) = run_str(&["membership", "--group", "A1", "--n", "3", "--weights", "0,0,0", "--format", "table"]);
        assert_eq!(code, 0);
        assert!(out.contains("in-cone"));
        let (code, out, _) = run_str(&["membership", "--group", "SL(2)", "--n", "3", "--weights", "1;1;3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["member"], json!(false));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["roots", "--group", "X9"]).0, 2);
        assert_eq!(run_str(&["membership", "--group", "A1", "--n", "3", "--weights", "-1,0,0"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        assert_eq!(run_str(&["inequalities", "--group", "F4", "--n", "3", "--tuple-cap", "10"]).0, 3);
        assert_eq!(run_str(&["verify", "thm-main", "--case", "nonsense"]).0, 2);
    }

    #[test]
    fn verify_and_tables() {
        let (code, out, _) =
            run_str(&["verify", "thm-main", "--case", "c-in-c", "--r", "3", "--s", "2", "--n", "3", "--format", "table"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("Q1 -> P1") && out.contains("Q2 -> P2"));
        let (code, out, _) = run_str(&["tables", "g2f4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.contains("432132343213234"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = run_str(&["inequalities", "--group", "Sp(4)", "--n", "3"]);
        let b = run_str(&["inequalities", "--group", "C", "--rank", "2", "--n", "3"]);
        assert_eq!(a.0, 0);
        let strip = |s: &str| {
            let mut v: Value = serde_json::from_str(s).unwrap();
            v["config"] = Value::Null;
            v
        };
        assert_eq!(strip(&a.1), strip(&b.1));
        assert_eq!(a.1, run_str(&["inequalities", "--group", "Sp(4)", "--n", "3"]).1);
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["a", "bb"]);
        t.push(vec!["123".into(), "x,y".into()]);
        assert_eq!(t.to_text(), "a    bb\n---  ---\n123  x,y\n");
        assert_eq!(t.to_csv(), "a,bb\n123,\"x,y\"\n");
    }
}
