use clap::ValueEnum;
use dickson_core::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub order_cap: u64,
    pub exhaustive_cap: u32,
    pub export_cap: u32,
    pub seed: u64,
    pub samples: u64,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.order_cap == 0 || self.exhaustive_cap == 0 || self.export_cap == 0 {
            return Err("caps must be positive".into());
        }
        if self.exhaustive_cap as u64 > self.order_cap {
            return Err(format!(
                "--exhaustive-cap {} exceeds --order-cap {}",
                self.exhaustive_cap, self.order_cap
            ));
        }
        if self.samples == 0 {
            return Err("--samples must be positive".into());
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits {
            order_cap: self.order_cap,
            exhaustive_cap: self.exhaustive_cap,
            export_cap: self.export_cap,
            samples: self.samples,
            ..Limits::default()
        }
    }
}
