use crate::search::CensusRecord;

use super::format::to_compact;

pub const CSV_HEADER: &str = "canonical_smt,knot,mirror_flag,tiles,faces,crossings,jones";

/// One CSV row per record. `canonical_smt` holds the compact form; links
/// get `knot` = `link` and an empty `jones`.
pub fn census_csv(records: &[CensusRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let (knot, mirror) = match &r.knot {
            Some(k) => (k.name.as_str(), u8::from(k.is_mirror())),
            None if r.stats.components == 1 => ("unknown", 0),
            None => ("link", 0),
        };
        let jones = r.jones.as_ref().map(|j| j.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            to_compact(&r.canonical),
            knot,
            mirror,
            r.stats.non_empty_tiles,
            r.stats.non_empty_faces,
            r.stats.crossing_tiles,
            jones
        ));
    }
    out
}
