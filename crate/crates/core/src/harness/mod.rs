//! Campaign harness: configuration, per-`alpha` evaluation, diagnostics.

pub mod campaign;
pub mod config;
pub mod probe;

pub use campaign::{evaluate_instance, run_campaign, Campaign, CampaignSummary, Exclusion, InstanceRecord, OutputFormat};
pub use config::{load_config, parse_config, CampaignConfig};
pub use probe::{nondegeneracy_probe, smallness_report, ProbeVerdict, SmallnessReport};
