//! The projectivity of the chain [v0; v1; v2; v3; v0] around a flag fixes
//! exactly one flag, for every configuration.

use a2tilde::plane::{nontriv_configurations, nontriv_fixed_point_check, pg2_of_order};

fn main() -> a2tilde::Result<()> {
    for q in [2, 3] {
        let plane = pg2_of_order(q)?;
        let configs = nontriv_configurations(&plane);
        let mut good = 0;
        for cfg in &configs {
            if nontriv_fixed_point_check(&plane, cfg)?.fixed == vec![cfg.c0] {
                good += 1;
            }
        }
        println!("q={q}: {good} of {} configurations fix exactly C0", configs.len());
    }
    Ok(())
}
