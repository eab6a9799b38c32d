use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::corpus::{Platform, PromptVariant, Ses};

const SUFFIX: &str = "Only generate the completion and nothing else.";
const STYLE: &str = "using the same style, tone, and diction of the first part";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub variant: PromptVariant,
    pub platform: Platform,
    /// Required for [`PromptVariant::ElsSes`] and rejected otherwise.
    pub ses: Option<Ses>,
}

impl PromptTemplate {
    pub fn new(variant: PromptVariant, platform: Platform, ses: Option<Ses>) -> Self {
        Self {
            variant,
            platform,
            ses,
        }
    }
}

pub fn platform_noun(platform: Platform) -> &'static str {
    match platform {
        Platform::Reddit => "Reddit post",
        Platform::Youtube => "caption for a YouTube video",
    }
}

pub fn render_prompt(template: &PromptTemplate, cue_text: &str) -> Result<String, HarnessError> {
    let noun = platform_noun(template.platform);
    let head = match (template.variant, template.ses) {
        (PromptVariant::Imp, None) => format!("Complete the following {noun}."),
        (PromptVariant::Els, None) => format!("Complete the following {noun} {STYLE}."),
        (PromptVariant::ElsSes, Some(ses)) => {
            format!("Complete the following {noun} written by a user from a {ses} socioeconomic status {STYLE}.")
        }
        (PromptVariant::ElsSes, None) => return Err(HarnessError::MissingSes),
        (variant, Some(_)) => return Err(HarnessError::UnexpectedSes(variant)),
    };
    Ok(format!("{head} {SUFFIX}\n{cue_text}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(variant: PromptVariant, platform: Platform, ses: Option<Ses>, cue: &str) -> String {
        render_prompt(&PromptTemplate::new(variant, platform, ses), cue).unwrap()
    }

    #[test]
    fn exact_text() {
        assert_eq!(
            render(PromptVariant::Imp, Platform::Reddit, None, "I am broke"),
            "Complete the following Reddit post. Only generate the completion and nothing else.\nI am broke"
        );
        assert_eq!(
            render(PromptVariant::Els, Platform::Youtube, None, "so today"),
            "Complete the following caption for a YouTube video using the same style, tone, and diction of the \
             first part. Only generate the completion and nothing else.\nso today"
        );
        assert_eq!(
            render(PromptVariant::ElsSes, Platform::Reddit, Some(Ses::Lower), "x"),
            "Complete the following Reddit post written by a user from a lower socioeconomic status using the same \
             style, tone, and diction of the first part. Only generate the completion and nothing else.\nx"
        );
        assert!(render(
            PromptVariant::ElsSes,
            Platform::Youtube,
            Some(Ses::Upper),
            "x"
        )
        .contains("written by a user from a upper socioeconomic status"));
    }

    #[test]
    fn ses_must_match_variant() {
        let t = PromptTemplate::new(PromptVariant::ElsSes, Platform::Reddit, None);
        assert!(matches!(
            render_prompt(&t, "x"),
            Err(HarnessError::MissingSes)
        ));
        let t = PromptTemplate::new(PromptVariant::Imp, Platform::Reddit, Some(Ses::Lower));
        assert!(matches!(
            render_prompt(&t, "x"),
            Err(HarnessError::UnexpectedSes(PromptVariant::Imp))
        ));
    }

    #[test]
    fn cue_is_verbatim() {
        let cue = "line one\n  line two  ";
        for v in [PromptVariant::Imp, PromptVariant::Els] {
            assert!(render(v, Platform::Reddit, None, cue).ends_with(&format!("{SUFFIX}\n{cue}")));
        }
    }
}
