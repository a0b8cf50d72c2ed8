use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use refarr_core::catalog::{expected_flat_census, observed_census, FlatCensus};
use refarr_core::field::{primes_up_to, PrimeField};
use refarr_core::monodromy::betti_map;
use refarr_core::multinet::{catalog_nets, MultinetJson};
use refarr_core::resonance::{betti_report, vanishing_report, BettiReport};
use refarr_core::{
    beta_p, build, char_poly, compute_flat_table, io, monodromy_profile, search_nets, verify, Arrangement,
    Error, FamilySpec, FlatTable, Multinet, SearchOptions,
};

use crate::render::table;
use crate::{Cli, Command, MultinetCommand, PrimeChoice, ReproduceTable, Source};

pub enum Outcome {
    Success,
    /// A reproduction check found a value differing from the expected one.
    Mismatch,
}

struct Loaded {
    arr: Arrangement,
    spec: Option<FamilySpec>,
    table: FlatTable,
}

fn load(source: &Source) -> Result<Loaded> {
    let (arr, spec) = match (&source.spec, &source.file) {
        (Some(s), _) => {
            let spec: FamilySpec = s.parse()?;
            (build(&spec)?, Some(spec))
        }
        (None, Some(path)) => (io::read_arrangement(path)?, None),
        (None, None) => unreachable!("clap enforces a source"),
    };
    let table = compute_flat_table(&arr);
    Ok(Loaded { arr, spec, table })
}

fn read_net(arr: &Arrangement, path: &Path) -> Result<Multinet> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json: MultinetJson =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(Multinet::from_json(arr, &json)?)
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Build { spec, output } => {
            let spec: FamilySpec = spec.parse()?;
            let arr = build(&spec)?;
            io::write_arrangement(output, &arr)?;
            if cli.json {
                print_json(out, &json!({ "file": output, "family": spec.to_string(), "hyperplanes": arr.len() }))?;
            } else {
                writeln!(out, "wrote {} ({} hyperplanes) to {}", spec, arr.len(), output.display())?;
            }
        }
        Command::Flats { source, census } => flats(cli.json, load(source)?, *census, out)?,
        Command::Betti { source, primes } => betti(cli.json, load(source)?, primes, out)?,
        Command::Criteria { source, prime } => criteria(cli.json, load(source)?, *prime, out)?,
        Command::Multinet { action } => multinet(cli.json, action, out)?,
        Command::Monodromy { source, nets } => monodromy(cli.json, load(source)?, nets, out)?,
        Command::Reproduce { table, m_max } => return reproduce(cli.json, *table, *m_max, out),
    }
    Ok(Outcome::Success)
}

fn census_rows(observed: &FlatCensus, expected: Option<&FlatCensus>) -> Vec<Vec<String>> {
    observed
        .iter()
        .map(|(ty, entry)| {
            let want = expected.map_or("-".to_string(), |e| e.get(ty).map_or(0, |x| x.count).to_string());
            vec![ty.to_string(), entry.multiplicity.to_string(), entry.count.to_string(), want]
        })
        .collect()
}

fn flats(as_json: bool, l: Loaded, census: bool, out: &mut dyn Write) -> Result<()> {
    let flat_json = l.table.to_json(&l.arr);
    let census_data = if census {
        let observed = observed_census(&l.arr, &l.table)?;
        let expected = l.spec.as_ref().and_then(|s| expected_flat_census(s).ok());
        Some((observed, expected))
    } else {
        None
    };
    if as_json {
        let mut v = serde_json::to_value(&flat_json)?;
        if let Some((observed, expected)) = &census_data {
            let entries: Vec<Value> = observed
                .iter()
                .map(|(ty, e)| {
                    json!({
                        "type": ty.to_string(),
                        "multiplicity": e.multiplicity,
                        "count": e.count,
                        "expected_count": expected.as_ref().map(|x| x.get(ty).map_or(0, |c| c.count)),
                    })
                })
                .collect();
            v["census"] = Value::Array(entries);
        }
        return print_json(out, &v);
    }
    writeln!(out, "{} hyperplanes, {} rank-2 flats", l.arr.len(), l.table.len())?;
    let rows: Vec<Vec<String>> =
        flat_json.flats.iter().map(|f| vec![f.multiplicity.to_string(), f.members.join(" ")]).collect();
    table(out, &["mult", "members"], &rows)?;
    if let Some((observed, expected)) = &census_data {
        writeln!(out)?;
        table(out, &["type", "mult", "count", "expected"], &census_rows(observed, expected.as_ref()))?;
        if let Some(e) = expected {
            writeln!(out, "census {}", if e == observed { "matches" } else { "DIFFERS" })?;
        }
    }
    Ok(())
}

fn fired(r: &BettiReport) -> String {
    let names: Vec<&str> = r.criteria.iter().filter(|c| c.fires).map(|c| c.criterion.name()).collect();
    if names.is_empty() {
        "-".into()
    } else {
        names.join(",")
    }
}

fn betti(as_json: bool, l: Loaded, choice: &PrimeChoice, out: &mut dyn Write) -> Result<()> {
    let primes = match choice.prime {
        Some(p) => {
            PrimeField::new(p)?;
            vec![p]
        }
        None => primes_up_to(l.arr.len() as u64),
    };
    let reports = primes.iter().map(|&p| betti_report(&l.arr, &l.table, p)).collect::<Result<Vec<_>, _>>()?;
    if as_json {
        return match (choice.prime, reports.as_slice()) {
            (Some(_), [one]) => print_json(out, one),
            _ => print_json(out, &reports),
        };
    }
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![r.prime.to_string(), r.dim_zp.to_string(), r.beta.to_string(), r.beta_via_aomoto.to_string(), fired(r)]
        })
        .collect();
    table(out, &["p", "dim Z_p", "beta", "beta (Aomoto)", "vanishing criteria"], &rows)?;
    if let [r] = reports.as_slice() {
        if let Some(w) = &r.witness {
            let cells: Vec<String> = l.arr.labels().iter().map(|lab| format!("{lab}={}", w[*lab])).collect();
            writeln!(out, "witness: {}", cells.join(" "))?;
        }
    }
    Ok(())
}

fn criteria(as_json: bool, l: Loaded, p: u64, out: &mut dyn Write) -> Result<()> {
    let report = vanishing_report(&l.arr, &l.table, p)?;
    let beta = beta_p(&l.table, p)?.value;
    if as_json {
        return print_json(out, &json!({ "prime": p, "beta": beta, "criteria": report }));
    }
    let rows: Vec<Vec<String>> = report
        .iter()
        .map(|c| vec![c.criterion.name().to_string(), if c.fires { "yes" } else { "no" }.into(), c.conclusion.clone()])
        .collect();
    table(out, &["criterion", "fires", "conclusion"], &rows)?;
    writeln!(out, "beta_{p} = {beta}")?;
    Ok(())
}

fn multinet(as_json: bool, action: &MultinetCommand, out: &mut dyn Write) -> Result<()> {
    match action {
        MultinetCommand::Verify { source, net } => {
            let l = load(source)?;
            let net = read_net(&l.arr, net)?;
            let report = verify(&l.arr, &l.table, &net)?;
            if as_json {
                return print_json(out, &report);
            }
            writeln!(out, "valid: {}", report.valid)?;
            writeln!(out, "blocks: {}", report.k)?;
            let reduced_mod: Vec<String> = report.reduced_mod.iter().map(u64::to_string).collect();
            let reduced = if report.reduced { "all h".to_string() } else { reduced_mod.join(",") };
            writeln!(out, "reduced mod: {}", if reduced.is_empty() { "-" } else { &reduced })?;
            writeln!(out, "net: {}", report.net)?;
            let rows: Vec<Vec<String>> =
                report.cross_flat_values.iter().map(|c| vec![c.value.to_string(), c.members.join(" ")]).collect();
            table(out, &["n_X", "cross flat"], &rows)?;
            for f in &report.failures {
                writeln!(out, "FAIL {}: block counts {:?}", f.members.join(" "), f.values)?;
            }
        }
        MultinetCommand::Search { source, k, max_n, max_results } => {
            let l = load(source)?;
            let opts = SearchOptions { max_results: *max_results, guard: *max_n };
            let nets = search_nets(&l.arr, &l.table, *k, opts)?;
            let jsons: Vec<MultinetJson> = nets.iter().map(|n| n.to_json(&l.arr)).collect();
            if as_json {
                return print_json(out, &json!({ "k": k, "count": nets.len(), "nets": jsons }));
            }
            writeln!(out, "{} reduced {k}-multinet(s)", nets.len())?;
            for (i, j) in jsons.iter().enumerate() {
                let blocks: Vec<String> = j.blocks.iter().map(|b| format!("{{{}}}", b.join(" "))).collect();
                writeln!(out, "{}: {}", i + 1, blocks.join(" | "))?;
            }
        }
    }
    Ok(())
}

fn monodromy(as_json: bool, l: Loaded, files: &[std::path::PathBuf], out: &mut dyn Write) -> Result<()> {
    let mut nets = files.iter().map(|f| read_net(&l.arr, f)).collect::<Result<Vec<_>>>()?;
    if let Some(spec) = &l.spec {
        nets.extend(catalog_nets(spec)?);
    }
    let betti = betti_map(&l.table)?;
    let profile = monodromy_profile(&l.arr, &l.table, &betti, &nets, l.arr.is_reflection())?;
    if as_json {
        return print_json(out, &profile.to_json());
    }
    writeln!(out, "{}: n = {}", profile.id, profile.n)?;
    let mut rows = vec![vec!["1".to_string(), profile.e1().to_string(), "always n - 1".to_string()]];
    for (c, s) in &profile.entries {
        let rules: Vec<&str> = s.rules().iter().map(|r| r.description()).collect();
        rows.push(vec![c.order().to_string(), s.to_string(), rules.join("; ")]);
    }
    table(out, &["d", "e_d", "rules"], &rows)?;
    writeln!(out, "char poly: {}", char_poly(&profile))?;
    Ok(())
}

fn reproduce(as_json: bool, which: ReproduceTable, m_max: u32, out: &mut dyn Write) -> Result<Outcome> {
    use refarr_core::reproduce::{reproduce_betti_table, reproduce_char_polys, GOLDEN_VERSION};
    if m_max < 2 {
        return Err(Error::InvalidParameter(format!("--m-max must be at least 2, got {m_max}")).into());
    }
    let all_ok = match which {
        ReproduceTable::Betti => {
            let rows = reproduce_betti_table(m_max)?;
            let ok = rows.iter().all(|r| r.ok);
            if as_json {
                print_json(out, &json!({ "golden_version": GOLDEN_VERSION, "rows": rows, "all_match": ok }))?;
            } else {
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.family.clone(),
                            r.n.to_string(),
                            r.prime.to_string(),
                            r.expected.to_string(),
                            r.computed.to_string(),
                            if r.ok { "ok" } else { "MISMATCH" }.into(),
                        ]
                    })
                    .collect();
                table(out, &["family", "n", "p", "expected", "computed", "status"], &cells)?;
                writeln!(out, "{} rows, {}", rows.len(), if ok { "all match" } else { "mismatches found" })?;
            }
            ok
        }
        ReproduceTable::CharPoly => {
            let rows = reproduce_char_polys(m_max)?;
            let ok = rows.iter().all(|r| r.ok);
            if as_json {
                print_json(out, &json!({ "rows": rows, "all_match": ok }))?;
            } else {
                for r in &rows {
                    let status = if r.ok { "ok" } else { "MISMATCH" };
                    writeln!(out, "{}  n = {}  Δ(t) = {}  [{status}]", r.family, r.n, r.computed)?;
                    if !r.ok {
                        writeln!(out, "    expected {}", r.expected)?;
                    }
                }
                writeln!(out, "{} rows, {}", rows.len(), if ok { "all match" } else { "mismatches found" })?;
            }
            ok
        }
    };
    Ok(if all_ok { Outcome::Success } else { Outcome::Mismatch })
}
