//! Command-line interface. The binary only forwards to [`run`].
//!
//! Exit codes: 0 success, 1 domain failure (invalid document, rejected
//! profile edit), 2 I/O or usage failure.

use std::ffi::OsString;
use std::io::Write;
use std::net::{Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::document::{validate_document, AnnotationDocument, Level};
use crate::ontology::{load_ontology, Ontology};
use crate::persistence::parse_document;
use crate::profile::{parse_profile, Profile, UserTerm};
use crate::search::{search_term, search_text, Hit, TextQuery};
use crate::service::{port_from_env, serve, AppState};
use crate::vocabulary::{file_name, Vocabulary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tierlink", version, about = "Ontology-backed tiered annotation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an annotation document.
    Validate {
        document: PathBuf,
        /// Ontology used by the document's profiles.
        #[arg(long)]
        ontology: Vec<PathBuf>,
        /// Directory holding the `.prf` files the tiers reference.
        #[arg(long)]
        profiles: Option<PathBuf>,
    },
    /// Create and edit profiles.
    #[command(subcommand)]
    Profile(ProfileCommand),
    /// Find annotations by text or ontology term.
    Search(SearchArgs),
    /// Print the tier hierarchy with annotation counts.
    Info { document: PathBuf },
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Subcommand)]
enum ProfileCommand {
    /// Write a profile with no terms.
    New {
        #[arg(long)]
        author: String,
        #[arg(long = "desc")]
        description: String,
        #[arg(long)]
        version: String,
        #[arg(long)]
        source: String,
        out: PathBuf,
    },
    /// Add a user-defined term mapped to one or more ontology terms.
    AddTerm {
        profile: PathBuf,
        name: String,
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long = "desc", default_value = "")]
        description: String,
    },
    /// Rename a user-defined term.
    Rename { profile: PathBuf, old: String, new: String },
    /// Check that every mapping target resolves in the ontology.
    Check {
        profile: PathBuf,
        #[arg(long)]
        ontology: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    document: PathBuf,
    /// Substring to look for in text annotations.
    #[arg(long, conflicts_with = "term", required_unless_present = "term")]
    text: Option<String>,
    /// Ontology term IRI or user-defined term.
    #[arg(long)]
    term: Option<String>,
    #[arg(long)]
    ignore_case: bool,
    /// Restrict a text search to these tiers.
    #[arg(long)]
    tier: Vec<String>,
    /// Also match instances of subclasses, using this ontology.
    #[arg(long, requires = "term")]
    expand: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ServeArgs {
    /// Defaults to the PORT environment variable, else 8470.
    #[arg(long)]
    port: Option<u16>,
    #[arg(long, default_value_t = Ipv4Addr::LOCALHOST.into())]
    host: std::net::IpAddr,
    /// Ontologies to preload, registered under their file stem.
    #[arg(long)]
    ontology: Vec<PathBuf>,
    /// Profiles to preload, registered under their file name.
    #[arg(long)]
    profile: Vec<PathBuf>,
    /// Documents to preload, registered under their file stem.
    #[arg(long)]
    document: Vec<PathBuf>,
}

/// Outcome of a failed command.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.to_string(),
        }
    }

    fn domain(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Validate {
            document,
            ontology,
            profiles,
        } => validate(&document, &ontology, profiles.as_deref(), out),
        Command::Profile(command) => profile(command, out),
        Command::Search(args) => search(&args, out),
        Command::Info { document } => info(&document, out),
        Command::Serve(args) => run_server(args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(Failure::io)
}

fn load_document(path: &Path) -> Result<AnnotationDocument, Failure> {
    parse_document(&read(path)?).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn load_ontology_file(path: &Path) -> Result<Ontology, Failure> {
    load_ontology(read(path)?.as_slice()).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn load_profile(path: &Path) -> Result<Profile, Failure> {
    parse_profile(&read(path)?).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().unwrap_or_default().to_string_lossy().into_owned()
}

fn validate(document: &Path, ontologies: &[PathBuf], profiles: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let bytes = read(document)?;
    let mut vocabulary = Vocabulary::new();
    let with_vocabulary = profiles.is_some() || !ontologies.is_empty();
    if let Some(dir) = profiles {
        let entries = std::fs::read_dir(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("prf")))
            .collect();
        paths.sort();
        for path in paths {
            let name = file_name(&path.to_string_lossy()).to_string();
            vocabulary.insert_profile(name, load_profile(&path)?);
        }
    }
    let mut loaded = Vec::new();
    for path in ontologies {
        let ontology = Arc::new(load_ontology_file(path)?);
        vocabulary.insert_ontology(ontology.clone());
        loaded.push(ontology);
    }
    // A single ontology also serves profiles whose source names it differently,
    // e.g. by download location.
    if let [only] = loaded.as_slice() {
        let sources: Vec<String> = vocabulary.profiles().map(|(_, p)| p.source.clone()).collect();
        for source in sources {
            if vocabulary.ontology(&source).is_none() {
                vocabulary.insert_ontology_as(source, only.clone());
            }
        }
    }

    let doc = match parse_document(&bytes) {
        Ok(doc) => doc,
        Err(e) => {
            emit(out, &format!("ERROR document {e}\n"))?;
            return Ok(EXIT_DOMAIN);
        }
    };
    let report = validate_document(&doc, with_vocabulary.then_some(&vocabulary));
    for issue in &report.issues {
        let level = match issue.level {
            Level::Error => "ERROR",
            Level::Warning => "WARNING",
        };
        emit(out, &format!("{level} {} {}\n", issue.locus, issue.message))?;
    }
    Ok(if report.issues.is_empty() { EXIT_OK } else { EXIT_DOMAIN })
}

fn profile(command: ProfileCommand, out: &mut dyn Write) -> Outcome {
    match command {
        ProfileCommand::New {
            author,
            description,
            version,
            source,
            out: path,
        } => {
            let profile = Profile::new(author, description, version, source).map_err(Failure::domain)?;
            write_file(&path, &profile.to_xml())?;
        }
        ProfileCommand::AddTerm {
            profile: path,
            name,
            targets,
            description,
        } => {
            let mut profile = load_profile(&path)?;
            profile
                .add_mapping(UserTerm::new(name).with_description(description), targets)
                .map_err(Failure::domain)?;
            write_file(&path, &profile.to_xml())?;
        }
        ProfileCommand::Rename {
            profile: path,
            old,
            new,
        } => {
            let mut profile = load_profile(&path)?;
            profile.rename_user_term(&old, &new).map_err(Failure::domain)?;
            write_file(&path, &profile.to_xml())?;
        }
        ProfileCommand::Check {
            profile: path,
            ontology,
        } => {
            let profile = load_profile(&path)?;
            let ontology = load_ontology_file(&ontology)?;
            let report = profile.validate(&ontology);
            for u in &report.unresolved {
                emit(out, &format!("ERROR {} {}: {}\n", u.user_term, u.target, u.reason))?;
            }
            return Ok(if report.is_empty() { EXIT_OK } else { EXIT_DOMAIN });
        }
    }
    Ok(EXIT_OK)
}

fn search(args: &SearchArgs, out: &mut dyn Write) -> Outcome {
    let doc = load_document(&args.document)?;
    let hits = if let Some(text) = &args.text {
        let options = TextQuery {
            case_sensitive: !args.ignore_case,
            tiers: (!args.tier.is_empty()).then_some(args.tier.as_slice()),
        };
        search_text(&doc, text, &options)
    } else {
        let term = args.term.as_deref().expect("clap requires text or term");
        let ontology = args.expand.as_deref().map(load_ontology_file).transpose()?;
        search_term(&doc, term, ontology.as_ref())
    };
    emit(out, &format_hits(&hits, args.json))?;
    Ok(EXIT_OK)
}

/// One line per hit, `tier<TAB>id<TAB>begin<TAB>end<TAB>value`, or a JSON
/// array. Unaligned hits print `-` for both times.
pub fn format_hits(hits: &[Hit], json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(hits).expect("hits serialize") + "\n";
    }
    hits.iter()
        .map(|h| {
            let (begin, end) = match h.alignment {
                crate::document::Alignment::Aligned { begin, end } => (begin.to_string(), end.to_string()),
                crate::document::Alignment::Unaligned => ("-".into(), "-".into()),
            };
            format!(
                "{}\t{}\t{begin}\t{end}\t{}\n",
                h.tier_id, h.annotation_id, h.matched_text
            )
        })
        .collect()
}

fn info(document: &Path, out: &mut dyn Write) -> Outcome {
    let doc = load_document(document)?;
    emit(out, &format_info(&doc))?;
    Ok(EXIT_OK)
}

/// Tier count, then the tier forest depth-first with children in id order.
pub fn format_info(doc: &AnnotationDocument) -> String {
    let n = doc.tiers().len();
    let mut text = format!("{n} {}\n", if n == 1 { "tier" } else { "tiers" });
    fn walk(doc: &AnnotationDocument, tier: &str, depth: usize, text: &mut String) {
        let lt = doc.tier_type(tier);
        let count = doc.annotations_on(tier).count();
        text.push_str(&format!(
            "{}{tier} [{} {}] {count} {}\n",
            "  ".repeat(depth),
            lt.map_or("?", |t| t.id.as_str()),
            lt.map_or("?".to_string(), |t| t.stereotype.to_string()),
            if count == 1 { "annotation" } else { "annotations" },
        ));
        for child in doc.child_tiers(tier) {
            walk(doc, child, depth + 1, text);
        }
    }
    for tier in doc.tiers().values().filter(|t| t.parent.is_none()) {
        walk(doc, &tier.id, 0, &mut text);
    }
    text
}

fn run_server(args: ServeArgs, out: &mut dyn Write) -> Outcome {
    let state = Arc::new(AppState::new());
    for path in &args.ontology {
        state.add_ontology(&stem(path), load_ontology_file(path)?);
    }
    for path in &args.profile {
        let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        state.add_profile(&name, load_profile(path)?);
    }
    for path in &args.document {
        state
            .add_document(&stem(path), load_document(path)?)
            .map_err(|e| Failure::domain(format!("{}: {e:?}", path.display())))?;
    }
    let addr = SocketAddr::new(args.host, args.port.unwrap_or_else(port_from_env));
    emit(out, &format!("listening on http://{addr}\n"))?;
    let _ = out.flush();
    let runtime = tokio::runtime::Runtime::new().map_err(Failure::io)?;
    runtime.block_on(serve(addr, state)).map_err(Failure::io)?;
    Ok(EXIT_OK)
}
