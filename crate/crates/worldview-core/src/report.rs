//! Run artifacts: the JSON report document and the static HTML tag cloud.
//!
//! The tag cloud is a single self-contained file — inline styles, no scripts,
//! no external fetches. Each world view renders as its label phrase, sized by
//! cluster cardinality and colored on a red→green ramp by trust score;
//! opening a phrase reveals the member tweets and the trust components.
//! Any URL inside displayed tweet text is masked as `[link]` so the page
//! never references an external resource, not even in prose.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cleaning::CleanTweet;
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::worldview::{TrustScore, WorldView};

/// Schema version stamped into every report.
pub const SCHEMA_VERSION: u32 = 1;

/// Default font bounds for the tag cloud, in pixels.
pub const DEFAULT_FONT_MIN: u32 = 14;
pub const DEFAULT_FONT_MAX: u32 = 40;

/// The serialized form of one run: metadata plus every scored world view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: ReportMetadata,
    pub views: Vec<ReportView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// RFC 3339 run timestamp; honors `SOURCE_DATE_EPOCH` when set.
    pub generated_at: String,
    pub corpus_size: usize,
    pub wordnet_version: String,
    /// Digest of the effective run configuration.
    pub config_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportView {
    pub label: String,
    pub member_count: usize,
    pub member_count_no_rt: usize,
    pub trust: TrustScore,
    pub members: Vec<ReportMember>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMember {
    pub id: String,
    pub author: String,
    pub text: String,
    pub clean_text: String,
    pub is_retweet: bool,
}

/// The run timestamp: `SOURCE_DATE_EPOCH` (seconds since the epoch) when the
/// environment provides it, the current time otherwise. RFC 3339, UTC.
pub fn run_timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|raw| raw.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    now.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Assemble the report document from scored views.
///
/// Members are listed in sorted id order with both the original and the
/// cleaned text. Every member id must resolve to a corpus tweet and a cleaned
/// tweet, and every view must carry a trust score; anything else is an
/// internal consistency bug.
pub fn build_report(
    views: &[WorldView],
    corpus: &Corpus,
    clean: &[CleanTweet],
    wordnet_version: &str,
    config_digest: &str,
) -> Result<ReportDocument> {
    let clean_by_id: BTreeMap<&str, &str> = clean
        .iter()
        .map(|c| (c.tweet_id.as_str(), c.clean_text.as_str()))
        .collect();
    let tweet_by_id: BTreeMap<&str, &crate::corpus::Tweet> =
        corpus.tweets.iter().map(|t| (t.id.as_str(), t)).collect();

    let mut report_views = Vec::with_capacity(views.len());
    for view in views {
        let trust = view.trust.ok_or_else(|| {
            Error::Internal(format!("world view {:?} was not scored", view.label()))
        })?;
        let mut members = Vec::with_capacity(view.members.len());
        for id in &view.members {
            let tweet = tweet_by_id
                .get(id.as_str())
                .ok_or_else(|| Error::Internal(format!("member {id:?} is not in the corpus")))?;
            let clean_text = clean_by_id
                .get(id.as_str())
                .ok_or_else(|| Error::Internal(format!("member {id:?} was never cleaned")))?;
            members.push(ReportMember {
                id: tweet.id.clone(),
                author: tweet.author.clone(),
                text: tweet.text.clone(),
                clean_text: clean_text.to_string(),
                is_retweet: tweet.is_retweet,
            });
        }
        report_views.push(ReportView {
            label: view.label(),
            member_count: view.members.len(),
            member_count_no_rt: view.member_count_no_rt,
            trust,
            members,
        });
    }

    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        metadata: ReportMetadata {
            generated_at: run_timestamp(),
            corpus_size: corpus.len(),
            wordnet_version: wordnet_version.to_string(),
            config_digest: config_digest.to_string(),
        },
        views: report_views,
    })
}

/// Serialize the document as pretty-printed JSON with a trailing newline.
/// Key order is the struct declaration order, stable across runs.
pub fn to_json(document: &ReportDocument) -> String {
    let mut out = serde_json::to_string_pretty(document).expect("report serializes");
    out.push('\n');
    out
}

/// Font size for a view with `count` members when the largest view has
/// `max_count`: linear interpolation between the bounds, rounded to whole
/// pixels.
pub fn font_size(count: usize, max_count: usize, font_min: u32, font_max: u32) -> u32 {
    if max_count == 0 {
        return font_min;
    }
    let ratio = count as f64 / max_count as f64;
    (font_min as f64 + (font_max as f64 - font_min as f64) * ratio).round() as u32
}

/// CSS color for a trust score: affine red→green ramp, channels clamped.
pub fn trust_color(s: f64) -> String {
    let clamped = s.clamp(0.0, 1.0);
    let red = (255.0 * (1.0 - clamped)).round() as u8;
    let green = (255.0 * clamped).round() as u8;
    format!("rgb({red}, {green}, 0)")
}

fn escape_html(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for ch in raw.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Replace URL-shaped tokens with `[link]` so displayed tweet text cannot
/// smuggle external references into the page.
fn mask_urls(text: &str) -> String {
    text.split_whitespace()
        .map(|token| {
            let lower = token.to_lowercase();
            if lower.starts_with("http://")
                || lower.starts_with("https://")
                || lower.starts_with("www.")
            {
                "[link]"
            } else {
                token
            }
        })
        .collect::<Vec<&str>>()
        .join(" ")
}

/// Render the document as a self-contained HTML tag cloud.
///
/// Views appear largest-first. Every phrase is a `<details>` disclosure whose
/// summary is the sized, colored label and whose body lists the member tweets
/// (original text, URLs masked) and the trust components. The markup is kept
/// well-formed XML — closed tags, quoted attributes — so strict parsers can
/// validate it.
pub fn render_tagcloud(document: &ReportDocument, font_min: u32, font_max: u32) -> String {
    let max_count = document
        .views
        .iter()
        .map(|v| v.member_count)
        .max()
        .unwrap_or(0);
    let mut order: Vec<&ReportView> = document.views.iter().collect();
    order.sort_by(|a, b| {
        b.member_count
            .cmp(&a.member_count)
            .then(a.label.cmp(&b.label))
    });

    let mut html = String::new();
    html.push_str("<!DOCTYPE html>\n");
    html.push_str("<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n");
    html.push_str("<title>World views</title>\n<style>\n");
    html.push_str(concat!(
        "body { font-family: sans-serif; margin: 2rem; background: #fff; color: #222; }\n",
        ".meta { color: #666; font-size: 13px; }\n",
        ".cloud { display: flex; flex-wrap: wrap; gap: 0.6rem 1.2rem; align-items: baseline; }\n",
        ".view > summary { cursor: pointer; list-style: none; font-weight: 600; }\n",
        ".panel { font-size: 14px; border-left: 3px solid #ddd; margin: 0.4rem 0 0.8rem; padding: 0.2rem 0.8rem; }\n",
        ".panel ul { margin: 0.4rem 0; padding-left: 1.2rem; }\n",
        ".trust { color: #444; }\n",
        ".rt { opacity: 0.7; }\n",
    ));
    html.push_str("</style>\n</head>\n<body>\n<h1>World views</h1>\n");
    html.push_str(&format!(
        "<p class=\"meta\">generated {} · {} tweets · WordNet {} · config {}</p>\n",
        escape_html(&document.metadata.generated_at),
        document.metadata.corpus_size,
        escape_html(&document.metadata.wordnet_version),
        escape_html(&document.metadata.config_digest),
    ));
    html.push_str("<main class=\"cloud\">\n");

    for view in order {
        let size = font_size(view.member_count, max_count, font_min, font_max);
        let color = trust_color(view.trust.s);
        html.push_str(&format!(
            "<details class=\"view\">\n<summary style=\"font-size: {size}px; color: {color};\">{}</summary>\n",
            escape_html(&view.label)
        ));
        html.push_str("<div class=\"panel\">\n");
        html.push_str(&format!(
            "<p class=\"trust\">members: {} ({} excluding retweets) · x = {:.3} · c = {:.3} · s = {:.3}</p>\n",
            view.member_count, view.member_count_no_rt, view.trust.x, view.trust.c, view.trust.s,
        ));
        html.push_str("<ul>\n");
        for member in &view.members {
            let class = if member.is_retweet {
                " class=\"rt\""
            } else {
                ""
            };
            html.push_str(&format!(
                "<li{class}><strong>{}</strong>: {}</li>\n",
                escape_html(&member.author),
                escape_html(&mask_urls(&member.text)),
            ));
        }
        html.push_str("</ul>\n</div>\n</details>\n");
    }

    html.push_str("</main>\n</body>\n</html>\n");
    html
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cleaning::{clean_pipeline, SlangDictionary};
    use std::collections::BTreeSet;

    fn score(x: f64, c: f64) -> TrustScore {
        TrustScore {
            x,
            c,
            s: 0.5 * x + 0.5 * c,
            w_size: 0.5,
            w_agency: 0.5,
        }
    }

    fn fixture() -> (Vec<WorldView>, Corpus, Vec<CleanTweet>) {
        let corpus = Corpus::from_parts([
            ("t1", "@BBCNews", "Police confirm explosion"),
            ("t2", "@user1", "Police confirm explosion http://t.co/abc"),
            ("t3", "@user2", "RT @BBCNews: Police confirm explosion"),
            ("t4", "@user3", "no service at Paddington"),
        ]);
        let clean: Vec<CleanTweet> = corpus
            .tweets
            .iter()
            .map(|t| clean_pipeline(t, SlangDictionary::builtin()))
            .collect();
        let views = vec![
            WorldView {
                label_path: vec!["Police".into(), "confirm".into(), "explosion".into()],
                members: BTreeSet::from(["t1".to_string(), "t2".to_string(), "t3".to_string()]),
                member_count_no_rt: 2,
                trust: Some(score(1.0, 0.4)),
            },
            WorldView {
                label_path: vec!["service".into(), "Paddington".into()],
                members: BTreeSet::from(["t4".to_string()]),
                member_count_no_rt: 1,
                trust: Some(score(0.5, 0.0)),
            },
        ];
        (views, corpus, clean)
    }

    fn document() -> ReportDocument {
        let (views, corpus, clean) = fixture();
        build_report(&views, &corpus, &clean, "3.0", "deadbeef").unwrap()
    }

    #[test]
    fn report_round_trips_through_json() {
        let doc = document();
        let json = to_json(&doc);
        let parsed: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
    }

    #[test]
    fn report_carries_labels_scores_and_texts() {
        let doc = document();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert_eq!(doc.metadata.corpus_size, 4);
        assert_eq!(doc.metadata.wordnet_version, "3.0");
        assert_eq!(doc.views[0].label, "Police confirm explosion");
        assert_eq!(doc.views[0].member_count, 3);
        assert_eq!(doc.views[0].member_count_no_rt, 2);
        assert!((doc.views[0].trust.s - 0.7).abs() < 1e-12);
        let json = to_json(&doc);
        assert!(json.contains("\"label\": \"Police confirm explosion\""));
        assert!(json.contains("\"s\": 0.7"));
        assert!(json.contains("\"clean_text\""));
        // Members resolve original text and retweet flags.
        let rt = doc.views[0].members.iter().find(|m| m.id == "t3").unwrap();
        assert!(rt.is_retweet);
        assert_eq!(rt.author, "@user2");
    }

    #[test]
    fn zero_views_still_produce_a_valid_document() {
        let corpus = Corpus::from_parts([("t1", "@a", "hello world")]);
        let clean: Vec<CleanTweet> = corpus
            .tweets
            .iter()
            .map(|t| clean_pipeline(t, SlangDictionary::builtin()))
            .collect();
        let doc = build_report(&[], &corpus, &clean, "3.0", "digest").unwrap();
        assert!(doc.views.is_empty());
        let parsed: ReportDocument = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(parsed, doc);
        let html = render_tagcloud(&doc, DEFAULT_FONT_MIN, DEFAULT_FONT_MAX);
        assert!(html.contains("<main class=\"cloud\">"));
    }

    #[test]
    fn unresolvable_member_is_an_internal_error() {
        let (mut views, corpus, clean) = fixture();
        views[0].members.insert("ghost".to_string());
        let err = build_report(&views, &corpus, &clean, "3.0", "d").unwrap_err();
        assert!(matches!(err, Error::Internal(_)));
    }

    #[test]
    fn unscored_view_is_an_internal_error() {
        let (mut views, corpus, clean) = fixture();
        views[1].trust = None;
        let err = build_report(&views, &corpus, &clean, "3.0", "d").unwrap_err();
        assert!(matches!(err, Error::Internal(_)));
    }

    #[test]
    fn source_date_epoch_pins_the_timestamp() {
        std::env::set_var("SOURCE_DATE_EPOCH", "0");
        assert_eq!(run_timestamp(), "1970-01-01T00:00:00Z");
        std::env::set_var("SOURCE_DATE_EPOCH", "1431648000");
        assert_eq!(run_timestamp(), "2015-05-15T00:00:00Z");
        std::env::remove_var("SOURCE_DATE_EPOCH");
        // Without the variable the timestamp is current, so only check shape.
        assert!(run_timestamp().ends_with('Z'));
    }

    #[test]
    fn font_sizes_interpolate_and_hit_the_endpoints() {
        // The worked pair: sizes 10 and 5 with bounds 14/40 → 40 and 27.
        assert_eq!(font_size(10, 10, 14, 40), 40);
        assert_eq!(font_size(5, 10, 14, 40), 27);
        assert_eq!(font_size(0, 10, 14, 40), 14);
    }

    #[test]
    fn colors_are_affine_and_clamped() {
        assert_eq!(trust_color(0.0), "rgb(255, 0, 0)");
        assert_eq!(trust_color(1.0), "rgb(0, 255, 0)");
        assert_eq!(trust_color(0.5), "rgb(128, 128, 0)");
        assert_eq!(trust_color(-3.0), "rgb(255, 0, 0)");
        assert_eq!(trust_color(7.0), "rgb(0, 255, 0)");
    }

    #[test]
    fn tagcloud_is_well_formed_xml() {
        let doc = document();
        let html = render_tagcloud(&doc, DEFAULT_FONT_MIN, DEFAULT_FONT_MAX);
        let mut reader = quick_xml::Reader::from_str(&html);
        loop {
            match reader.read_event() {
                Ok(quick_xml::events::Event::Eof) => break,
                Ok(_) => {}
                Err(e) => panic!("tag cloud is not well-formed: {e}"),
            }
        }
    }

    #[test]
    fn tagcloud_masks_urls_and_never_references_the_network() {
        let doc = document();
        let html = render_tagcloud(&doc, DEFAULT_FONT_MIN, DEFAULT_FONT_MAX);
        assert!(!html.contains("http://"));
        assert!(!html.contains("https://"));
        assert!(html.contains("[link]"));
    }

    #[test]
    fn tagcloud_escapes_hostile_text() {
        let corpus = Corpus::from_parts([("t1", "@a <b>", "x <script>alert(1)</script> & co")]);
        let clean: Vec<CleanTweet> = corpus
            .tweets
            .iter()
            .map(|t| clean_pipeline(t, SlangDictionary::builtin()))
            .collect();
        let views = vec![WorldView {
            label_path: vec!["<x>".into()],
            members: BTreeSet::from(["t1".to_string()]),
            member_count_no_rt: 1,
            trust: Some(score(1.0, 0.0)),
        }];
        let doc = build_report(&views, &corpus, &clean, "3.0", "d").unwrap();
        let html = render_tagcloud(&doc, DEFAULT_FONT_MIN, DEFAULT_FONT_MAX);
        assert!(!html.contains("<script>"));
        assert!(html.contains("&lt;script&gt;"));
        assert!(html.contains("&amp; co"));
        assert!(html.contains("@a &lt;b&gt;"));
    }

    #[test]
    fn fonts_are_monotone_in_member_count() {
        let doc = document();
        let html = render_tagcloud(&doc, DEFAULT_FONT_MIN, DEFAULT_FONT_MAX);
        // Two views sized 3 and 1: the larger must have font 40, the other
        // 14 + 26/3 ≈ 23.
        assert!(html.contains("font-size: 40px"));
        assert!(html.contains("font-size: 23px"));
        let pos_big = html.find("font-size: 40px").unwrap();
        let pos_small = html.find("font-size: 23px").unwrap();
        assert!(pos_big < pos_small, "views must render largest first");
    }

    #[test]
    fn detail_panel_lists_member_tweets() {
        let doc = document();
        let html = render_tagcloud(&doc, DEFAULT_FONT_MIN, DEFAULT_FONT_MAX);
        assert!(html.contains("Police confirm explosion"));
        assert!(html.contains("@BBCNews"));
        assert!(html.contains("RT @BBCNews: Police confirm explosion"));
        assert!(html.contains("x = 1.000"));
        assert!(html.contains("s = 0.700"));
    }
}
