use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qfca_core::concept::FormalContext;
use qfca_core::fixtures;
use qfca_core::io::{self, ContextBundle};
use qfca_core::lingvar::{
    apposition, apposition_tensor, granulate, induced_indiscernibility, DescriptionFunction,
    LinguisticVariable,
};
use qfca_core::predicate::{check_predicate, extension, hom_metric, lower_approx, upper_approx};
use qfca_core::quantale::check_laws;
use qfca_core::{
    Axiom, Bool2, CostReal, Error, Fuzzy01, Powerset, Quantale, QuantaleTag, VRelation, VSpace,
    ValidationReport,
};

use crate::{Cli, Command, Op};

macro_rules! dispatch {
    ($tag:expr, $f:ident ( $($arg:expr),* $(,)? )) => {
        match &$tag {
            QuantaleTag::Bool2 => $f(&Bool2, $($arg),*),
            QuantaleTag::Fuzzy01 => $f(&Fuzzy01, $($arg),*),
            QuantaleTag::CostReal => $f(&CostReal, $($arg),*),
            QuantaleTag::Powerset(atoms) => $f(&Powerset::new(atoms.clone())?, $($arg),*),
        }
    };
}

struct Output<'a> {
    dir: Option<&'a Path>,
}

impl Output<'_> {
    /// Writes `name` into the output directory, or prints it.
    fn emit(&self, name: &str, content: &str) -> Result<()> {
        match self.dir {
            Some(dir) => write_file(&dir.join(name), content),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }

    /// Like `emit`, but secondary artifacts are skipped without a directory.
    fn attach(&self, name: &str, content: &str) -> Result<()> {
        match self.dir {
            Some(dir) => write_file(&dir.join(name), content),
            None => Ok(()),
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn file_context(path: &Path) -> impl Fn() -> String + '_ {
    move || format!("in {}", path.display())
}

fn resolve(flag: &Option<QuantaleTag>, declared: Option<QuantaleTag>) -> Result<QuantaleTag> {
    match (flag, declared) {
        (Some(f), Some(d)) if *f != d => Err(Error::Structural(format!(
            "--quantale {f} conflicts with the declared quantale {d}"
        ))
        .into()),
        (Some(f), _) => Ok(f.clone()),
        (None, Some(d)) => Ok(d),
        (None, None) => {
            Err(Error::Structural("no quantale declared; pass --quantale".into()).into())
        }
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let out = Output {
        dir: cli.out.as_deref(),
    };
    match &cli.command {
        Command::Validate {
            paths,
            laws,
            instances,
        } => validate(cli, &out, paths, *laws, *instances),
        Command::Scale {
            descriptions,
            scales,
            tensor,
        } => {
            if descriptions.len() != scales.len() {
                return Err(Error::Structural(format!(
                    "{} descriptions for {} scales; give one of each per facet",
                    descriptions.len(),
                    scales.len()
                ))
                .into());
            }
            let texts = scales.iter().map(|p| read(p)).collect::<Result<Vec<_>>>()?;
            let declared = io::scale_quantale(&texts[0]).with_context(file_context(&scales[0]))?;
            let tag = resolve(&cli.quantale, Some(declared))?;
            dispatch!(tag, scale(cli, &out, descriptions, scales, &texts, *tensor))
        }
        Command::Concepts {
            context,
            grid,
            dot,
            json,
        } => {
            let text = read(context)?;
            let declared = io::bundle_quantale(&text).with_context(file_context(context))?;
            let tag = resolve(&cli.quantale, Some(declared))?;
            dispatch!(
                tag,
                concepts(cli, &out, (context, &text), grid.as_deref(), *dot, *json)
            )
        }
        Command::Implications { context, threshold } => {
            let text = read(context)?;
            let declared = io::bundle_quantale(&text).with_context(file_context(context))?;
            let tag = resolve(&cli.quantale, Some(declared))?;
            dispatch!(
                tag,
                implications(cli, &out, context, &text, threshold.as_deref())
            )
        }
        Command::Approx { space, predicate } => {
            let tag = resolve(&cli.quantale, None)?;
            dispatch!(tag, approx(cli, &out, space, predicate))
        }
        Command::Compose {
            relations,
            spaces,
            op,
        } => {
            let tag = resolve(&cli.quantale, None)?;
            dispatch!(tag, compose(cli, &out, relations, spaces, *op))
        }
        Command::Sum { left, right } => combine(cli, &out, left, right, false),
        Command::Tensor { left, right } => combine(cli, &out, left, right, true),
    }
}

fn repaired_path(cli: &Cli, path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("artifact");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("txt");
    let name = format!("{stem}.repaired.{ext}");
    match &cli.out {
        Some(dir) => dir.join(name),
        None => path.with_file_name(name),
    }
}

fn log_diff<Q: Quantale>(
    q: &Q,
    label: &str,
    rows: &[String],
    cols: &[String],
    before: &qfca_core::Matrix<Q::Value>,
    after: &qfca_core::Matrix<Q::Value>,
) {
    for (i, row) in rows.iter().enumerate() {
        for (j, col) in cols.iter().enumerate() {
            let (a, b) = (before.get(i, j), after.get(i, j));
            if !q.equiv(a, b) {
                eprintln!(
                    "repaired {label} ({row},{col}): {} -> {}",
                    q.format_value(a),
                    q.format_value(b)
                );
            }
        }
    }
}

enum Kind {
    Matrix,
    Bundle,
    Scale,
}

fn kind_of(path: &Path, text: &str) -> Kind {
    if path.extension().is_some_and(|e| e == "json") {
        Kind::Scale
    } else if text.lines().any(|l| l.trim() == "[incidence]") {
        Kind::Bundle
    } else {
        Kind::Matrix
    }
}

fn validate(
    cli: &Cli,
    _out: &Output,
    paths: &[PathBuf],
    laws: bool,
    instances: usize,
) -> Result<u8> {
    if paths.is_empty() && !laws {
        return Err(Error::Structural("nothing to validate".into()).into());
    }
    let mut failed = false;
    for path in paths {
        let text = read(path)?;
        let report = match kind_of(path, &text) {
            Kind::Matrix => {
                let tag = resolve(&cli.quantale, None)?;
                dispatch!(tag, validate_matrix(cli, path, &text))
            }
            Kind::Bundle => {
                let declared = io::bundle_quantale(&text).with_context(file_context(path))?;
                let tag = resolve(&cli.quantale, Some(declared))?;
                dispatch!(tag, validate_bundle(cli, path, &text))
            }
            Kind::Scale => {
                let declared = io::scale_quantale(&text).with_context(file_context(path))?;
                let tag = resolve(&cli.quantale, Some(declared))?;
                dispatch!(tag, validate_scale(cli, path, &text))
            }
        }
        .with_context(file_context(path))?;
        if report.is_valid() {
            println!("{}: ok", path.display());
        } else {
            failed = true;
            for v in &report.violations {
                println!("{}: {v}", path.display());
            }
        }
    }
    if laws {
        let tag = resolve(&cli.quantale, None)?;
        let failures = dispatch!(tag, law_checks(cli.seed, instances));
        if failures.is_empty() {
            println!("laws ({tag}, seed {}): ok", cli.seed);
        } else {
            failed = true;
            for f in &failures {
                println!("laws ({tag}): {f}");
            }
        }
    }
    Ok(if failed && !cli.repair { 1 } else { 0 })
}

fn validate_matrix<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    path: &Path,
    text: &str,
) -> Result<ValidationReport> {
    let space = io::read_space(q, text)?;
    let report = space.validate();
    if cli.repair && !report.is_valid() {
        let fixed = VSpace::closure(q.clone(), space.elements().to_vec(), space.metric().clone())?;
        let label = path.display().to_string();
        log_diff(
            q,
            &label,
            space.elements(),
            space.elements(),
            space.metric(),
            fixed.metric(),
        );
        write_file(&repaired_path(cli, path), &io::write_space(&fixed))?;
    }
    Ok(report)
}

fn validate_bundle<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    path: &Path,
    text: &str,
) -> Result<ValidationReport> {
    let bundle = io::read_bundle(q, text)?;
    let report = bundle.validate()?;
    if cli.repair && !report.is_valid() {
        let close =
            |s: &VSpace<Q>| VSpace::closure(q.clone(), s.elements().to_vec(), s.metric().clone());
        let objects = close(&bundle.objects)?;
        let attributes = close(&bundle.attributes)?;
        let rel = VRelation::new(
            objects.clone(),
            attributes.clone(),
            bundle.incidence.clone(),
        )?
        .repair()?;
        let label = path.display().to_string();
        log_diff(
            q,
            &label,
            objects.elements(),
            attributes.elements(),
            &bundle.incidence,
            rel.matrix(),
        );
        let fixed = ContextBundle {
            objects,
            attributes,
            incidence: rel.matrix().clone(),
        };
        write_file(&repaired_path(cli, path), &io::write_bundle(&fixed))?;
    }
    Ok(report)
}

fn validate_scale<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    path: &Path,
    text: &str,
) -> Result<ValidationReport> {
    let parts = io::read_scale(q, text, path.parent())?;
    let mut report = ValidationReport::new();
    for space in [&parts.domain, &parts.terms] {
        report.extend(space.validate());
        if !space.is_symmetric() {
            report.push(Axiom::Symmetry, &[], "scale spaces must be symmetric");
        }
    }
    for (m, name) in parts.terms.elements().iter().enumerate() {
        for mut v in check_predicate(&parts.domain, parts.assignment.row(m))?.violations {
            v.elements.insert(0, name.clone());
            report.violations.push(v);
        }
    }
    let names = parts.terms.elements();
    for a in 0..parts.terms.len() {
        for b in 0..parts.terms.len() {
            let hom = hom_metric(q, parts.assignment.row(a), parts.assignment.row(b))?;
            let m = parts.terms.distance(a, b);
            if !q.leq(m, hom) {
                report.push(
                    Axiom::TermMetric,
                    &[&names[a], &names[b]],
                    format!("{} ⋠ {}", q.format_value(m), q.format_value(hom)),
                );
            }
        }
    }
    if cli.repair && !report.is_valid() {
        let raw = parts.assignment.clone();
        let (var, _) = parts.into_variable(true)?;
        let label = path.display().to_string();
        log_diff(
            q,
            &label,
            var.terms().elements(),
            var.domain().elements(),
            &raw,
            var.assignment().matrix(),
        );
        write_file(&repaired_path(cli, path), &io::write_scale(&var))?;
    }
    Ok(report)
}

/// Quantale laws on the sample grid, then relation and Galois laws on random
/// instances.
fn law_checks<Q: Quantale>(q: &Q, seed: u64, instances: usize) -> Vec<String> {
    let mut failures = check_laws(q, &q.samples());
    let mut rng = fixtures::rng(seed);
    for k in 0..instances {
        let [a, b, c, d] = fixtures::random_sizes(&mut rng, 1, 4);
        let x = fixtures::random_space(q, &mut rng, "x", a);
        let y = fixtures::random_space(q, &mut rng, "y", b);
        let z = fixtures::random_space(q, &mut rng, "z", c);
        let w = fixtures::random_space(q, &mut rng, "w", d);
        let r = fixtures::random_relation(&mut rng, &x, &y);
        let s = fixtures::random_relation(&mut rng, &y, &z);
        let t = fixtures::random_relation(&mut rng, &z, &w);
        let u = fixtures::random_relation(&mut rng, &x, &z);
        let rs = r.compose(&s).expect("spaces chain");
        if !rs.compose(&t).expect("spaces chain").equiv(
            &r.compose(&s.compose(&t).expect("spaces chain"))
                .expect("spaces chain"),
        ) {
            failures.push(format!("instance {k}: composition is not associative"));
        }
        let left = VRelation::identity(&x).compose(&r).expect("spaces chain");
        let right = r.compose(&VRelation::identity(&y)).expect("spaces chain");
        if !left.equiv(&r) || !right.equiv(&r) {
            failures.push(format!("instance {k}: identity law fails"));
        }
        let res = r.residuate_source(&u).expect("shared source");
        if rs.leq(&u) != s.leq(&res) {
            failures.push(format!(
                "instance {k}: composition is not adjoint to residuation"
            ));
        }
        let ctx = fixtures::random_context(q, &mut rng, a, b);
        let phi = fixtures::random_predicate(&mut rng, ctx.objects());
        if let Some(msg) = galois_failure(&ctx, &phi) {
            failures.push(format!("instance {k}: {msg}"));
        }
    }
    failures
}

fn galois_failure<Q: Quantale>(ctx: &FormalContext<Q>, phi: &[Q::Value]) -> Option<String> {
    let q = ctx.quantale();
    let up = ctx.derive_intent(phi).ok()?;
    let closed = ctx.derive_extent(&up).ok()?;
    if !phi.iter().zip(&closed).all(|(&a, &b)| q.leq(a, b)) {
        return Some("φ is not below φ↑↓".into());
    }
    let again = ctx.derive_intent(&closed).ok()?;
    if !up.iter().zip(&again).all(|(&a, &b)| q.equiv(a, b)) {
        return Some("φ↑ differs from φ↑↓↑".into());
    }
    None
}

fn load_variable<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    path: &Path,
    text: &str,
) -> Result<LinguisticVariable<Q>> {
    let (var, repaired) = io::read_scale(q, text, path.parent())
        .and_then(|p| p.into_variable(cli.repair))
        .with_context(file_context(path))?;
    for v in &repaired.violations {
        eprintln!("repaired {}: {v}", path.display());
    }
    Ok(var)
}

fn scale<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    out: &Output,
    descriptions: &[PathBuf],
    scales: &[PathBuf],
    texts: &[String],
    tensor: bool,
) -> Result<u8> {
    let mut facets = Vec::with_capacity(scales.len());
    for ((dpath, spath), text) in descriptions.iter().zip(scales).zip(texts) {
        let declared = io::scale_quantale(text).with_context(file_context(spath))?;
        if declared != q.tag() {
            return Err(Error::Structural(format!(
                "{} declares quantale {declared}, expected {}",
                spath.display(),
                q.tag()
            ))
            .into());
        }
        let var = load_variable(q, cli, spath, text)?;
        let pairs = io::read_description(&read(dpath)?).with_context(file_context(dpath))?;
        let desc = DescriptionFunction::from_pairs(var.domain(), &pairs)
            .with_context(file_context(dpath))?;
        facets.push((desc, var));
    }
    let ctx = match (facets.len(), tensor) {
        (1, _) => granulate(&facets[0].0, &facets[0].1)?,
        (_, false) => apposition(&facets)?,
        (_, true) => apposition_tensor(&facets)?,
    };
    out.emit("context.ctx", &io::write_context(&ctx))?;

    let mut fineness = String::new();
    for (i, ((desc, var), spath)) in facets.iter().zip(scales).enumerate() {
        let ind = induced_indiscernibility(desc, var)?;
        let name = spath
            .file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let file = if facets.len() == 1 {
            "indiscernibility.csv".to_string()
        } else {
            format!("indiscernibility-{}.csv", i + 1)
        };
        out.attach(&file, &io::write_space(&ind.induced))?;
        let mut report = ind.space_report;
        report.extend(ind.fineness);
        if report.is_valid() {
            fineness.push_str(&format!("facet {} ({name}): fine\n", i + 1));
        } else {
            for v in &report.violations {
                fineness.push_str(&format!("facet {} ({name}): {v}\n", i + 1));
            }
        }
    }
    eprint!("{fineness}");
    out.attach("fineness.txt", &fineness)?;
    Ok(0)
}

fn load_context<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    path: &Path,
    text: &str,
) -> Result<FormalContext<Q>> {
    io::read_bundle(q, text)
        .and_then(|b| b.into_context(cli.repair))
        .with_context(file_context(path))
}

fn concepts<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    out: &Output,
    (path, text): (&Path, &str),
    grid: Option<&[String]>,
    dot: bool,
    json: bool,
) -> Result<u8> {
    let ctx = load_context(q, cli, path, text)?;
    let seeds = grid
        .map(|g| {
            g.iter()
                .map(|s| q.parse_value(s))
                .collect::<qfca_core::Result<Vec<_>>>()
        })
        .transpose()
        .context("in --grid")?;
    let lattice = ctx.enumerate_concepts(seeds.as_deref())?;
    eprintln!(
        "{} concepts over a grid of {} values",
        lattice.len(),
        lattice.grid().len()
    );
    if json || !dot {
        out.emit("lattice.json", &io::write_lattice(&lattice))?;
    }
    if dot {
        out.emit("lattice.dot", &io::write_dot(&io::hasse_graph(&lattice)))?;
    }
    Ok(0)
}

fn implications<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    out: &Output,
    path: &Path,
    text: &str,
    threshold: Option<&str>,
) -> Result<u8> {
    let ctx = load_context(q, cli, path, text)?;
    let threshold = match threshold {
        Some(t) => q.parse_value(t).context("in --threshold")?,
        None => q.bottom(),
    };
    let list = ctx.list_implications(&ctx.default_candidates(), threshold)?;
    out.emit("implications.csv", &io::write_implications(q, &list))?;
    Ok(0)
}

/// Reads a space, closing it under `--repair` and rejecting it otherwise.
fn load_space<Q: Quantale>(q: &Q, cli: &Cli, path: &Path) -> Result<VSpace<Q>> {
    let space = io::read_space(q, &read(path)?).with_context(file_context(path))?;
    let report = space.validate();
    if report.is_valid() {
        return Ok(space);
    }
    if !cli.repair {
        return Err(anyhow::Error::from(Error::Validation(report))
            .context(format!("in {}", path.display())));
    }
    let fixed = VSpace::closure(q.clone(), space.elements().to_vec(), space.metric().clone())?;
    let label = path.display().to_string();
    log_diff(
        q,
        &label,
        space.elements(),
        space.elements(),
        space.metric(),
        fixed.metric(),
    );
    Ok(fixed)
}

fn approx<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    out: &Output,
    space: &Path,
    predicate: &Path,
) -> Result<u8> {
    let space = load_space(q, cli, space)?;
    let phi =
        io::read_predicate(&space, &read(predicate)?).with_context(file_context(predicate))?;
    let lower = lower_approx(&space, &phi)?;
    let upper = upper_approx(&space, &phi)?;
    let extensions = format!(
        "lower: {}\nupper: {}\n",
        extension(&space, &lower)?.join(" "),
        extension(&space, &upper)?.join(" ")
    );
    match out.dir {
        Some(_) => {
            out.emit("lower.csv", &io::write_predicate(&space, &lower))?;
            out.emit("upper.csv", &io::write_predicate(&space, &upper))?;
            out.emit("extensions.txt", &extensions)?;
        }
        None => {
            print!("# lower\n{}", io::write_predicate(&space, &lower));
            print!("# upper\n{}", io::write_predicate(&space, &upper));
        }
    }
    eprint!("{extensions}");
    Ok(0)
}

fn discrete<Q: Quantale>(q: &Q, ids: &[String]) -> Result<VSpace<Q>> {
    Ok(VSpace::discrete(q.clone(), ids.to_vec())?)
}

fn compose<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    out: &Output,
    relations: &[PathBuf],
    space_paths: &[PathBuf],
    op: Op,
) -> Result<u8> {
    let texts = relations
        .iter()
        .map(|p| read(p))
        .collect::<Result<Vec<_>>>()?;
    let mats = texts
        .iter()
        .zip(relations)
        .map(|(t, p)| io::read_matrix(q, t).with_context(file_context(p)))
        .collect::<Result<Vec<_>>>()?;
    // (source, target) space index of every relation
    let (count, ends): (usize, Vec<(usize, usize)>) = match op {
        Op::Compose => (
            mats.len() + 1,
            (0..mats.len()).map(|i| (i, i + 1)).collect(),
        ),
        Op::ResiduateSource | Op::ResiduateTarget if mats.len() != 2 => {
            return Err(Error::Structural("residuation takes exactly two relations".into()).into())
        }
        Op::ResiduateSource => (3, vec![(0, 1), (0, 2)]),
        Op::ResiduateTarget => (3, vec![(0, 1), (2, 1)]),
    };
    let spaces = if space_paths.is_empty() {
        let mut ids: Vec<Option<&[String]>> = vec![None; count];
        for (m, &(s, t)) in mats.iter().zip(&ends) {
            ids[s].get_or_insert(&m.rows);
            ids[t].get_or_insert(&m.cols);
        }
        ids.into_iter()
            .map(|i| discrete(q, i.expect("every space is an end of some relation")))
            .collect::<Result<Vec<_>>>()?
    } else if space_paths.len() == count {
        space_paths
            .iter()
            .map(|p| load_space(q, cli, p))
            .collect::<Result<Vec<_>>>()?
    } else {
        return Err(Error::Structural(format!(
            "expected {count} --space files, got {}",
            space_paths.len()
        ))
        .into());
    };
    let mut rels = Vec::with_capacity(mats.len());
    for ((text, path), &(s, t)) in texts.iter().zip(relations).zip(&ends) {
        let rel =
            io::read_relation(text, &spaces[s], &spaces[t]).with_context(file_context(path))?;
        let report = rel.validate();
        if report.is_valid() {
            rels.push(rel);
        } else if cli.repair {
            let fixed = rel.repair()?;
            let label = path.display().to_string();
            log_diff(
                q,
                &label,
                rel.source().elements(),
                rel.target().elements(),
                rel.matrix(),
                fixed.matrix(),
            );
            rels.push(fixed);
        } else {
            return Err(anyhow::Error::from(Error::Validation(report))
                .context(format!("in {}", path.display())));
        }
    }
    let result = match op {
        Op::Compose => {
            let mut acc = rels[0].clone();
            for r in &rels[1..] {
                acc = acc.compose(r)?;
            }
            acc
        }
        Op::ResiduateSource => rels[0].residuate_source(&rels[1])?,
        Op::ResiduateTarget => rels[0].residuate_target(&rels[1])?,
    };
    out.emit("result.csv", &io::write_relation(&result))?;
    Ok(0)
}

fn combine(cli: &Cli, out: &Output, left: &Path, right: &Path, tensor: bool) -> Result<u8> {
    let (lt, rt) = (read(left)?, read(right)?);
    let ld = io::scale_quantale(&lt).with_context(file_context(left))?;
    let rd = io::scale_quantale(&rt).with_context(file_context(right))?;
    if ld != rd {
        return Err(
            Error::Structural(format!("scales over different quantales: {ld} and {rd}")).into(),
        );
    }
    let tag = resolve(&cli.quantale, Some(ld))?;
    dispatch!(
        tag,
        combine_with(cli, out, (left, &lt), (right, &rt), tensor)
    )
}

fn combine_with<Q: Quantale>(
    q: &Q,
    cli: &Cli,
    out: &Output,
    (left, lt): (&Path, &str),
    (right, rt): (&Path, &str),
    tensor: bool,
) -> Result<u8> {
    let a = load_variable(q, cli, left, lt)?;
    let b = load_variable(q, cli, right, rt)?;
    let (name, var) = if tensor {
        ("tensor.json", a.tensor(&b)?)
    } else {
        ("sum.json", a.constraint_sum(&b)?)
    };
    out.emit(name, &io::write_scale(&var))?;
    Ok(0)
}
