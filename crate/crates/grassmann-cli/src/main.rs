mod args;
mod commands;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use grassmann::{Fp, Rational};

use args::{Cli, Field, Format};
use commands::{execute, Output};

fn dispatch(cli: &Cli) -> grassmann::Result<Output> {
    match cli.field {
        Field::Rational => execute::<Rational>(cli),
        Field::Prime(3) => execute::<Fp<3>>(cli),
        Field::Prime(5) => execute::<Fp<5>>(cli),
        Field::Prime(7) => execute::<Fp<7>>(cli),
        Field::Prime(11) => execute::<Fp<11>>(cli),
        Field::Prime(13) => execute::<Fp<13>>(cli),
        Field::Prime(101) => execute::<Fp<101>>(cli),
        Field::Prime(7919) => execute::<Fp<7919>>(cli),
        Field::Prime(2147483647) => execute::<Fp<2147483647>>(cli),
        Field::Prime(p) => Err(grassmann::Error::Unsupported(format!("prime {p}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.condition());
            ExitCode::from(2)
        }
    }
}
