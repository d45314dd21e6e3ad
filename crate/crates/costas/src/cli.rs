//! Command tree and dispatch. Every command produces a [`RunReport`].

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use costas_core::abgroup::{automorphisms, is_isomorphic, isomorphism};
use costas_core::circmap::{
    are_equivalent, are_equivalent_up_to_translation, export_array, is_circular_costas, is_standard, render_raster, verify_periodic_costas, welch_map_with,
};
use costas_core::classic::{
    difference_triangle, has_shifting_property, is_circular, is_costas, is_singly_periodic, welch_family, welch_sequence, CostasSequence,
    DEFAULT_CENSUS_ORDER,
};
use costas_core::cpoly::{
    quadratic_field_bound, general_bound, count_welch_polynomials, enumerate_welch_polynomials, is_costas_polynomial, shifting_witnesses,
    CensusKind,
};
use costas_core::dpds::{dpds_equivalent, from_map, is_dpds, to_map, SearchMode};
use costas_core::fqpoly::LinearizedPoly;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::format::{self, element_text, field_of_order, parse_group, parse_list, poly_text, poly_to_json};
use crate::parallel;
use crate::report::{Emit, RunReport, Table};
use crate::suite::{run_suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "costas", version, about = "Costas sequences, circular Costas maps, product difference sets and Costas polynomials")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub emit: Emit,
    /// Worker threads for searches and censuses.
    #[arg(long, env = parallel::THREADS_ENV, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock time in the report (output is then no longer reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical Costas sequences.
    #[command(subcommand)]
    Classic(ClassicCmd),
    /// Finite abelian groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Maps between groups.
    #[command(subcommand)]
    Map(MapCmd),
    /// Direct product difference sets.
    #[command(subcommand)]
    Dpds(DpdsCmd),
    /// Costas polynomials over GF(q).
    #[command(subcommand)]
    Cpoly(CpolyCmd),
    /// The full acceptance battery.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum ClassicCmd {
    /// Check a sequence such as 2,4,3,1.
    Verify {
        sequence: String,
        /// Also print the dot grid.
        #[arg(long)]
        grid: bool,
    },
    /// Welch sequences alpha^(i+c) mod p; the whole family without --alpha.
    Welch {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        alpha: Option<i64>,
        #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
        c: i64,
    },
    /// Count (and optionally list) all Costas sequences of order n.
    Census {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        list: bool,
        /// Largest order accepted.
        #[arg(long, default_value_t = DEFAULT_CENSUS_ORDER)]
        limit: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Decide whether two groups are isomorphic.
    Iso {
        g: String,
        h: String,
        /// Print an explicit isomorphism.
        #[arg(long)]
        witness: bool,
    },
    /// Count the automorphisms of a group.
    Aut {
        g: String,
        #[arg(long)]
        list: bool,
    },
}

/// A JSON input file; `-` reads standard input.
#[derive(Debug, Args)]
pub struct Input {
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum MapCmd {
    /// Check a map file for the circular Costas property.
    Verify(Input),
    /// Build i -> L(alpha^(i+c)) into the additive group of GF(q).
    Welch {
        #[arg(short)]
        q: u64,
        /// Coefficients of L(x) = sum c_j x^(p^j), as element codes c_0,...,c_{m-1}.
        #[arg(long)]
        lcoeffs: Option<String>,
        #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
        c: i64,
        /// Primitive element by code; the field's default otherwise.
        #[arg(long)]
        alpha: Option<u32>,
    },
    /// Lay a map out as a binary array over the given cyclic splits.
    ExportArray {
        file: PathBuf,
        #[arg(long)]
        domain_split: String,
        #[arg(long)]
        codomain_split: String,
        /// Text raster instead of JSON (2-D and 3-D only).
        #[arg(long)]
        raster: bool,
    },
    /// Check an exported array file for the periodic Costas property.
    VerifyArray(Input),
    /// Search for isomorphisms carrying one map to the other.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Move each image's missed element to zero first.
        #[arg(long)]
        translations: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum DpdsCmd {
    /// Check a difference set file.
    Verify(Input),
    /// The graph of a map file.
    FromMap(Input),
    /// The associated map of a difference set file.
    ToMap(Input),
    /// Search for an automorphism and translation relating two sets.
    Equiv { a: PathBuf, b: PathBuf },
    /// Exhaustively confirm that no set of order n exists.
    SearchNone {
        #[arg(short)]
        n: u64,
        /// Only subsets through (0,0).
        #[arg(long)]
        normalized: bool,
        /// Group A (default Z_{n-1}).
        #[arg(long)]
        a: Option<String>,
        /// Group B (default Z_n).
        #[arg(long)]
        b: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CpolyCmd {
    /// Check the Costas polynomial property.
    Verify {
        #[arg(short)]
        q: u64,
        poly: String,
    },
    /// Check the shifting property and print witnesses a(d).
    Shifting {
        #[arg(short)]
        q: u64,
        poly: String,
    },
    /// Exact count of polynomials L(x^s).
    Count {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
        /// Also enumerate and compare.
        #[arg(long)]
        check: bool,
    },
    /// List the distinct polynomials L(x^s).
    Enumerate {
        #[arg(short)]
        q: u64,
    },
    /// Brute-force the shifting Costas polynomials of GF(q).
    CensusShifting {
        #[arg(short)]
        q: u64,
        /// Allow q = 11.
        #[arg(long)]
        extended: bool,
        /// Also count every Costas polynomial.
        #[arg(long)]
        all_costas: bool,
    },
    /// Brute-force the circular Costas sequences of length p - 1.
    CensusCircular {
        #[arg(short)]
        p: u64,
        /// Allow p = 11.
        #[arg(long)]
        extended: bool,
    },
    /// R(p, m) over a grid of primes and degrees.
    Bounds {
        #[arg(long, num_args = 4, value_names = ["PMIN", "PMAX", "MMIN", "MMAX"], default_values_t = [2, 13, 3, 3])]
        table: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Run every acceptance check.
    Run {
        /// Add the order-11 censuses.
        #[arg(long)]
        include_slow: bool,
        /// Keep every n-th linearized polynomial for q above 16.
        #[arg(long, default_value_t = 1)]
        welch_stride: usize,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Runs the parsed command on a pool sized by `--threads`.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = parallel::pool(cli.threads).install(|| dispatch(&cli.command))?;
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn dispatch(cmd: &Command) -> Result<RunReport> {
    match cmd {
        Command::Classic(c) => classic(c),
        Command::Group(c) => group(c),
        Command::Map(c) => map(c),
        Command::Dpds(c) => dpds(c),
        Command::Cpoly(c) => cpoly(c),
        Command::Suite(SuiteCmd::Run { include_slow, welch_stride }) => {
            Ok(run_suite(&SuiteOptions { include_slow: *include_slow, welch_stride: *welch_stride }))
        }
    }
}

fn sequence(s: &str) -> Result<CostasSequence> {
    let terms = parse_list(s)?.into_iter().map(|t| u32::try_from(t).context("term too large")).collect::<Result<Vec<_>>>()?;
    Ok(CostasSequence::new(terms)?)
}

fn classic(cmd: &ClassicCmd) -> Result<RunReport> {
    match cmd {
        ClassicCmd::Verify { sequence: s, grid } => {
            let seq = sequence(s)?;
            let mut r = RunReport::new("classic verify");
            r.param("sequence", &seq);
            let tri = difference_triangle(&seq);
            r.verdict("costas", is_costas(&seq), "");
            r.result = json!({
                "triangle": tri.rows,
                "singly_periodic": is_singly_periodic(&seq),
                "circular": is_circular(&seq),
                "shifting": has_shifting_property(&seq),
            });
            let mut text = String::new();
            for row in &tri.rows {
                text.push_str(&row.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
                text.push('\n');
            }
            text.push_str(&format!(
                "singly periodic: {}\ncircular: {}\nshifting: {}\n",
                is_singly_periodic(&seq),
                is_circular(&seq),
                has_shifting_property(&seq)
            ));
            if *grid {
                text.push_str(&seq.render_grid());
            }
            r.text = Some(text);
            Ok(r)
        }
        ClassicCmd::Welch { p, alpha, c } => {
            let mut r = RunReport::new("classic welch");
            r.param("p", p);
            let seqs = match alpha {
                Some(a) => {
                    r.param("alpha", a).param("c", c);
                    vec![welch_sequence(*p, *a, *c)?]
                }
                None => welch_family(*p)?,
            };
            let all = seqs.iter().all(|s| is_costas(s) && is_circular(s));
            r.verdict("costas-circular", all, "");
            r.count("sequences", seqs.len());
            r.result = json!(seqs.iter().map(|s| s.terms()).collect::<Vec<_>>());
            r.text = Some(seqs.iter().map(|s| format!("{s}\n")).collect());
            Ok(r)
        }
        ClassicCmd::Census { n, list, limit } => {
            let all = parallel::costas_census(*n, *limit)?;
            let mut r = RunReport::new("classic census");
            r.param("n", n).count("costas", all.len());
            if *list {
                r.result = json!(all.iter().map(|s| s.terms()).collect::<Vec<_>>());
                r.text = Some(all.iter().map(|s| format!("{s}\n")).collect());
            }
            Ok(r)
        }
    }
}

fn group(cmd: &GroupCmd) -> Result<RunReport> {
    match cmd {
        GroupCmd::Iso { g, h, witness } => {
            let (g, h) = (parse_group(g)?, parse_group(h)?);
            let mut r = RunReport::new("group iso");
            r.param("g", &g).param("h", &h);
            let iso = is_isomorphic(&g, &h);
            let inv = |x: &costas_core::AbelianGroup| x.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
            r.verdict("isomorphic", iso, format!("invariant factors [{}] vs [{}]", inv(&g), inv(&h)));
            if *witness && iso {
                let w = isomorphism(&g, &h)?.expect("isomorphic");
                let pairs: Vec<_> = g.elements().map(|e| json!([e.coords(), w.apply_element(&e).coords()])).collect();
                r.text = Some(g.elements().map(|e| format!("{e} -> {}\n", w.apply_element(&e))).collect());
                r.result = json!(pairs);
            }
            Ok(r)
        }
        GroupCmd::Aut { g, list } => {
            let g = parse_group(g)?;
            let all: Vec<Vec<usize>> = automorphisms(&g)?.collect();
            let mut r = RunReport::new("group aut");
            r.param("g", &g).count("automorphisms", all.len());
            if *list {
                r.result = json!(all);
            }
            Ok(r)
        }
    }
}

fn split(s: &str) -> Result<Vec<u64>> {
    let v = parse_list(s)?;
    if v.is_empty() {
        bail!("empty split");
    }
    Ok(v)
}

fn map(cmd: &MapCmd) -> Result<RunReport> {
    match cmd {
        MapCmd::Verify(Input { file }) => {
            let f = format::map_from_json(&read_input(file)?)?;
            let mut r = RunReport::new("map verify");
            r.param("domain", f.domain()).param("codomain", f.codomain());
            r.verdict("circular-costas", is_circular_costas(&f)?, "");
            let missed: Vec<String> = f.missed().iter().map(|&j| f.codomain().element_at(j).to_string()).collect();
            r.result = json!({ "standard": is_standard(&f), "missed": missed });
            Ok(r)
        }
        MapCmd::Welch { q, lcoeffs, c, alpha } => {
            let field = field_of_order(*q)?;
            let l = match lcoeffs {
                None => LinearizedPoly::identity(&field),
                Some(s) => {
                    let codes = parse_list(s)?;
                    let els = codes.into_iter().map(|k| field.from_code(k as u32)).collect::<Result<Vec<_>, _>>()?;
                    LinearizedPoly::new(&field, els)?
                }
            };
            let alpha = match alpha {
                Some(code) => field.from_code(*code)?,
                None => field.primitive_element(),
            };
            let w = welch_map_with(&field, alpha, &l, *c)?;
            let mut r = RunReport::new("map welch");
            r.param("q", q).param("alpha", element_text(&field, alpha)).param("c", c);
            r.param("lcoeffs", l.lcoeffs().iter().map(|&x| element_text(&field, x)).collect::<Vec<_>>().join(" "));
            r.verdict("circular-costas", is_circular_costas(&w)?, "").verdict("standard", is_standard(&w), "");
            r.result = format::map_to_json(&w);
            Ok(r)
        }
        MapCmd::ExportArray { file, domain_split, codomain_split, raster } => {
            let f = format::map_from_json(&read_input(file)?)?;
            let (ds, cs) = (split(domain_split)?, split(codomain_split)?);
            let arr = export_array(&f, &ds, &cs)?;
            let mut r = RunReport::new("map export-array");
            r.param("domain_split", domain_split).param("codomain_split", codomain_split);
            r.verdict("periodic-costas", verify_periodic_costas(&arr, ds.len())?, "");
            r.count("ones", arr.ones.len());
            r.result = format::array_to_json(&arr, ds.len());
            if *raster {
                r.text = Some(render_raster(&arr)?);
            }
            Ok(r)
        }
        MapCmd::VerifyArray(Input { file }) => {
            let (arr, domain_dims) = format::array_from_json(&read_input(file)?)?;
            let h = domain_dims.context("array file lacks domain_dims")?;
            let mut r = RunReport::new("map verify-array");
            r.param("dims", arr.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x")).param("domain_dims", h);
            r.verdict("periodic-costas", verify_periodic_costas(&arr, h)?, "");
            Ok(r)
        }
        MapCmd::Equiv { a, b, translations } => {
            let f = format::map_from_json(&read_input(a)?)?;
            let g = format::map_from_json(&read_input(b)?)?;
            let w = if *translations { are_equivalent_up_to_translation(&f, &g)? } else { are_equivalent(&f, &g)? };
            let mut r = RunReport::new("map equiv");
            r.param("translations", translations);
            r.verdict("equivalent", w.is_some(), "");
            if let Some(w) = w {
                r.result = json!({ "domain_iso": w.domain.table(), "codomain_iso": w.codomain.table() });
            }
            Ok(r)
        }
    }
}

fn dpds(cmd: &DpdsCmd) -> Result<RunReport> {
    match cmd {
        DpdsCmd::Verify(Input { file }) => {
            let d = format::dpds_from_json(&read_input(file)?)?;
            let mut r = RunReport::new("dpds verify");
            r.param("group", d.ambient()).param("elements", d.len());
            r.verdict("dpds", is_dpds(&d)?, "");
            let rows: Vec<String> = d.difference_table().iter().map(|row| format!("{}-{}={}", row.minuend, row.subtrahend, row.difference)).collect();
            r.text = Some(rows.iter().map(|s| format!("{s}\n")).collect());
            r.result = json!(rows);
            Ok(r)
        }
        DpdsCmd::FromMap(Input { file }) => {
            let f = format::map_from_json(&read_input(file)?)?;
            let d = from_map(&f)?;
            let mut r = RunReport::new("dpds from-map");
            r.count("elements", d.len());
            r.result = format::dpds_to_json(&d);
            Ok(r)
        }
        DpdsCmd::ToMap(Input { file }) => {
            let d = format::dpds_from_json(&read_input(file)?)?;
            let f = to_map(&d)?;
            let mut r = RunReport::new("dpds to-map");
            r.result = format::map_to_json(&f);
            Ok(r)
        }
        DpdsCmd::Equiv { a, b } => {
            let d1 = format::dpds_from_json(&read_input(a)?)?;
            let d2 = format::dpds_from_json(&read_input(b)?)?;
            let w = dpds_equivalent(&d1, &d2)?;
            let mut r = RunReport::new("dpds equiv");
            r.verdict("equivalent", w.is_some(), "");
            if let Some(w) = w {
                let g = d1.ambient();
                let t = g.element_at(w.translation.0 * d1.group_b().size() + w.translation.1);
                r.result = json!({ "automorphism": w.automorphism, "translation": t.coords() });
            }
            Ok(r)
        }
        DpdsCmd::SearchNone { n, normalized, a, b } => {
            if *n < 3 {
                bail!("order must be at least 3");
            }
            let ga = match a {
                Some(s) => parse_group(s)?,
                None => costas_core::AbelianGroup::cyclic(n - 1),
            };
            let gb = match b {
                Some(s) => parse_group(s)?,
                None => costas_core::AbelianGroup::cyclic(*n),
            };
            let mode = if *normalized { SearchMode::Normalized } else { SearchMode::Full };
            let out = parallel::dpds_search(&ga, &gb, mode)?;
            let mut r = RunReport::new("dpds search-none");
            r.param("n", n).param("a", &ga).param("b", &gb).param("normalized", normalized);
            r.verdict("none-found", out.found.is_empty(), "");
            r.count("candidates", out.candidates).count("found", out.found.len());
            if !out.found.is_empty() {
                r.result = json!(out.found.iter().map(format::dpds_to_json).collect::<Vec<_>>());
            }
            Ok(r)
        }
    }
}

fn polys_report(r: &mut RunReport, field: &costas_core::FiniteField, polys: &[costas_core::FqPolynomial]) {
    r.result = json!(polys.iter().map(|f| poly_to_json(field, f)).collect::<Vec<_>>());
    r.text = Some(polys.iter().map(|f| format!("{}\n", poly_text(field, f))).collect());
}

fn cpoly(cmd: &CpolyCmd) -> Result<RunReport> {
    match cmd {
        CpolyCmd::Verify { q, poly } => {
            let field = field_of_order(*q)?;
            let f = format::parse_poly(&field, poly)?;
            let mut r = RunReport::new("cpoly verify");
            r.param("q", q).param("poly", poly_text(&field, &f));
            r.verdict("costas-polynomial", is_costas_polynomial(&field, &f)?, "");
            Ok(r)
        }
        CpolyCmd::Shifting { q, poly } => {
            let field = field_of_order(*q)?;
            let f = format::parse_poly(&field, poly)?;
            let mut r = RunReport::new("cpoly shifting");
            r.param("q", q).param("poly", poly_text(&field, &f));
            let w = shifting_witnesses(&field, &f)?;
            r.verdict("shifting-costas", w.is_some(), "");
            if let Some(w) = w {
                let pairs: Vec<_> = w.iter().map(|&(d, a)| json!({ "d": element_text(&field, d), "a": element_text(&field, a) })).collect();
                r.text = Some(w.iter().map(|&(d, a)| format!("d = {} -> a = {}\n", element_text(&field, d), element_text(&field, a))).collect());
                r.result = json!(pairs);
            }
            Ok(r)
        }
        CpolyCmd::Count { p, m, check } => {
            let n = count_welch_polynomials(*p, *m)?;
            let mut r = RunReport::new("cpoly count");
            r.param("p", p).param("m", m).count("welch_polynomials", &n);
            if *check {
                let field = costas_core::FiniteField::new(*p, *m)?;
                let k = enumerate_welch_polynomials(&field)?.len();
                r.verdict("enumeration-matches", BigUint::from(k) == n, format!("{k} enumerated"));
            }
            Ok(r)
        }
        CpolyCmd::Enumerate { q } => {
            let field = field_of_order(*q)?;
            let polys = enumerate_welch_polynomials(&field)?;
            let mut r = RunReport::new("cpoly enumerate");
            r.param("q", q).count("polynomials", polys.len());
            polys_report(&mut r, &field, &polys);
            Ok(r)
        }
        CpolyCmd::CensusShifting { q, extended, all_costas } => {
            let field = field_of_order(*q)?;
            let census = parallel::polynomial_census(&field, CensusKind::Shifting, *extended)?;
            let welch = enumerate_welch_polynomials(&field)?;
            let mut r = RunReport::new("cpoly census-shifting");
            r.param("q", q);
            r.verdict("equals-welch-family", census.found == welch, "");
            r.count("candidates", census.candidates).count("shifting", census.found.len()).count("welch", welch.len());
            if *all_costas {
                let all = parallel::polynomial_census(&field, CensusKind::Costas, *extended)?;
                r.count("costas", all.found.len());
            }
            polys_report(&mut r, &field, &census.found);
            Ok(r)
        }
        CpolyCmd::CensusCircular { p, extended } => {
            let c = parallel::circular_census(*p, *extended)?;
            let mut r = RunReport::new("cpoly census-circular");
            r.param("p", p);
            r.verdict("equals-welch-family", c.matches_welch(), "");
            r.count("candidates", c.candidates).count("circular", c.found.len()).count("welch", c.welch.len());
            r.result = json!(c.found.iter().map(|s| s.terms()).collect::<Vec<_>>());
            r.text = Some(c.found.iter().map(|s| format!("{s}\n")).collect());
            Ok(r)
        }
        CpolyCmd::Bounds { table } => {
            let [pmin, pmax, mmin, mmax] = table[..] else { bail!("--table takes PMIN PMAX MMIN MMAX") };
            let rows = costas_core::cpoly::bounds_table(pmin, pmax, mmin as u32, mmax as u32)?;
            let mut r = RunReport::new("cpoly bounds");
            r.param("pmin", pmin).param("pmax", pmax).param("mmin", mmin).param("mmax", mmax);
            let mut t = Table { headers: ["p", "m", "R_num", "R_den", "R_float"].map(String::from).to_vec(), rows: Vec::new() };
            for row in &rows {
                let float = row.r.to_f64().map(|x| format!("{x:.6}")).unwrap_or_default();
                t.rows.push(vec![row.p.to_string(), row.m.to_string(), row.r.numer().to_string(), row.r.denom().to_string(), float]);
            }
            if mmin <= 2 {
                for p in (pmin..=pmax).filter(|&p| costas_core::arith::is_prime(p)) {
                    r.count(&format!("quadratic_field_bound(p={p})"), quadratic_field_bound(p)?);
                }
            }
            for row in &rows {
                r.count(&format!("general_bound(p={},m={})", row.p, row.m), general_bound(row.p, row.m)?);
            }
            r.table = Some(t);
            Ok(r)
        }
    }
}

/// Process entry: parse, run, print; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.emit));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
