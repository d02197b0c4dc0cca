"""Agent specs used by the screening pipeline.

Five agents, each JSON-only and schema-strict: profile extraction from the
canonical document, mention/entity graph construction (two steps: mention
scan, then disambiguation + linking), technical-fit scoring, culture-fit
scoring over the seven categories, and the language-judgment risk screen.
"""

from __future__ import annotations

from typing import Any

from ..domain import CULTURE_CATEGORIES
from .runtime import AgentSpec, PromptStep
from .schema import strict_object, unit_interval

_DATE = {"type": ["string", "null"]}


def _string_array() -> dict[str, Any]:
    return {"type": "array", "items": {"type": "string"}}


def _linked_item_array() -> dict[str, Any]:
    return {
        "type": "array",
        "items": strict_object({
            "name": {"type": "string"},
            "detail": {"type": "string"},
            "evidence_ids": _string_array(),
        }, required=["name", "evidence_ids"]),
    }


PROFILE_SCHEMA = strict_object({
    "full_name": {"type": "string"},
    "education": {
        "type": "array",
        "items": strict_object({
            "institution": {"type": "string"},
            "degree": {"type": "string"},
            "start": _DATE,
            "end": _DATE,
            "evidence_ids": _string_array(),
        }, required=["institution"]),
    },
    "employment": {
        "type": "array",
        "items": strict_object({
            "employer": {"type": "string"},
            "title": {"type": "string"},
            "start": {"type": "string"},
            "end": _DATE,
            "evidence_ids": _string_array(),
        }, required=["employer", "start", "end"]),
    },
    "skills": {
        "type": "array",
        "items": strict_object({
            "name": {"type": "string"},
            "evidence_ids": _string_array(),
            "confidence": unit_interval(),
        }),
    },
    "projects": _linked_item_array(),
    "technologies": _linked_item_array(),
    "languages": _linked_item_array(),
    "achievements": _linked_item_array(),
    "listed_profile_urls": _string_array(),
    "evidence": {
        "type": "array",
        "items": strict_object({
            "evidence_id": {"type": "string"},
            "kind": {"enum": ["resume_claim", "project", "answer", "public_activity", "assignment"]},
            "source_ref": {"type": "string"},
            "excerpt": {"type": "string"},
            "confidence": unit_interval(),
        }),
    },
})

MENTIONS_SCHEMA = strict_object({
    "mentions": {
        "type": "array",
        "items": strict_object({
            "surface_text": {"type": "string"},
            "location": {"type": "string"},
        }),
    },
})

ENTITY_GRAPH_SCHEMA = strict_object({
    "mentions": MENTIONS_SCHEMA["properties"]["mentions"],
    "resolved_entities": {
        "type": "array",
        "items": strict_object({
            "entity_id": {"type": "string"},
            "sense": {"type": "string"},
            "linked_category": {"enum": ["skill", "achievement", "attribute", "background"]},
            "mention_indexes": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 1,
            },
        }),
    },
    "links": {
        "type": "array",
        "items": strict_object({
            "entity_id": {"type": "string"},
            "target_kind": {"enum": ["skills", "achievements", "attributes"]},
            "target": {"type": "string"},
            "confidence": unit_interval(),
        }),
    },
})

TECHNICAL_FIT_SCHEMA = strict_object({
    "score": unit_interval(),
    "rationale": {"type": "string", "minLength": 1},
    "evidence_ids": _string_array(),
})

CULTURE_FIT_SCHEMA = strict_object({
    "categories": strict_object({
        category: strict_object({
            "score": unit_interval(),
            "rationale": {"type": "string", "minLength": 1},
        })
        for category in CULTURE_CATEGORIES
    }),
})

RISK_SCREEN_SCHEMA = strict_object({
    "flags": {
        "type": "array",
        "items": strict_object({
            "kind": {"enum": [
                "vague_phrasing",
                "ai_generated_content",
                "toxicity_or_extremism",
                "deception_indicator",
            ]},
            "rationale": {"type": "string", "minLength": 1},
            "evidence_ids": _string_array(),
        }, required=["kind", "rationale"]),
    },
})


def profile_extractor_spec() -> AgentSpec:
    return AgentSpec(
        agent_name="profile_extractor",
        steps=[PromptStep(template=(
            "Extract a structured candidate profile as strict JSON.\n"
            "Role: {role_title}\n"
            "Capture education, employment history, skills, projects, technologies, "
            "languages, achievements, and any profile URLs the candidate listed, each "
            "linked to evidence excerpts with a confidence level.\n\n"
            "Candidate materials:\n{document}\n"
        ))],
        output_schema=PROFILE_SCHEMA,
    )


def entity_graph_spec() -> AgentSpec:
    return AgentSpec(
        agent_name="entity_graph",
        steps=[
            PromptStep(
                template=(
                    "List every explicit mention of a technology or relevant attribute "
                    "in the materials below as strict JSON.\n\n{document}\n"
                ),
                expects_schema=MENTIONS_SCHEMA,
            ),
            PromptStep(template=(
                "Disambiguate each mention (separate entity senses from background "
                "context) and link entities to the skills, achievements, and "
                "attributes they support, with confidence levels. Strict JSON.\n\n"
                "Mentions:\n{step_0_output}\n"
            )),
        ],
        output_schema=ENTITY_GRAPH_SCHEMA,
    )


def technical_fit_spec() -> AgentSpec:
    return AgentSpec(
        agent_name="technical_fit",
        steps=[PromptStep(template=(
            "Score this candidate's technical fit for the role in [0, 1] as strict JSON.\n"
            "Weigh direct experience, projects, answers to questions, and public code "
            "activity above bare claims. Check depth: awareness of limitations, common "
            "pitfalls, metrics, and trade-offs. Cite evidence ids in the rationale.\n\n"
            "Role requirements:\n{job_spec}\n\nEntity graph:\n{entity_graph}\n"
        ))],
        output_schema=TECHNICAL_FIT_SCHEMA,
    )


def culture_fit_spec() -> AgentSpec:
    return AgentSpec(
        agent_name="culture_fit",
        steps=[PromptStep(template=(
            "Score the candidate against each company culture category in [0, 1] "
            "with a short rationale per category, as strict JSON. Judge observable "
            "support in the materials, not personality.\n\n"
            "Company values:\n{company_values}\n\nCandidate profile:\n{profile}\n"
        ))],
        output_schema=CULTURE_FIT_SCHEMA,
    )


def risk_screen_spec() -> AgentSpec:
    return AgentSpec(
        agent_name="risk_screen",
        steps=[PromptStep(template=(
            "Screen the materials for language-judgment negative indicators: vague "
            "phrasing, signs of AI-generated content, deception indicators, toxicity "
            "or extremism. Return strict JSON flags with rationales and evidence ids; "
            "return an empty list when nothing is found.\n\n"
            "Profile:\n{profile}\n\nDocument:\n{document}\n"
        ))],
        output_schema=RISK_SCREEN_SCHEMA,
    )


PIPELINE_AGENTS = {
    spec().agent_name: spec
    for spec in (
        profile_extractor_spec,
        entity_graph_spec,
        technical_fit_spec,
        culture_fit_spec,
        risk_screen_spec,
    )
}
