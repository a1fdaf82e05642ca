mod contour;
mod eval;
mod hardy;
mod lemmas;
mod zeros;

use crate::config::{Cli, Command, FileLayer, Global};
use crate::error::{CliError, Outcome};

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let file = match &cli.config {
        Some(path) => FileLayer::load(path)?,
        None => FileLayer::default(),
    };
    let global = Global::resolve(&cli, &file)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(global.workers)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {} workers: {e}", global.workers)))?;
    pool.install(|| match &cli.command {
        Command::Eval(args) => eval::run(args, &file, &global),
        Command::Zeros(args) => zeros::run(args, &file, &global),
        Command::Hardy(args) => hardy::run(args, &file, &global),
        Command::Lemmas(args) => lemmas::run(args, &file, &global),
        Command::Contour(args) => contour::run(args, &file, &global),
    })
}
