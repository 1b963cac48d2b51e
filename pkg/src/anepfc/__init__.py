"""Accepting networks of evolutionary processors with filtered connections."""
from .compiler import CompiledNetwork, InvalidTagSystem, compile_tag_system, enumerate_X
from .engine import (
    InputOutsideAlphabet,
    NetworkInvalid,
    Outcome,
    OutcomeKind,
    RunResult,
    StepBudget,
    TraceRecord,
    UndefinedTime,
    communication_step,
    evolutionary_step,
    initial_config,
    replay,
    run,
    time_of,
)
from .model import (
    Edge,
    EdgeFilter,
    FilterType,
    Mode,
    Network,
    ProcessorNode,
    Rule,
    RuleKind,
    apply_rule,
    apply_ruleset,
    filter_pass,
    validate_network,
)
from .tag import TagOutcome, TagSystem, is_halting_word, run_tag, tag_step, validate_tag

__all__ = [
    "CompiledNetwork", "Edge", "EdgeFilter", "FilterType", "InputOutsideAlphabet",
    "InvalidTagSystem", "Mode", "Network", "NetworkInvalid", "Outcome", "OutcomeKind",
    "ProcessorNode", "Rule", "RuleKind", "RunResult", "StepBudget", "TagOutcome", "TagSystem",
    "TraceRecord", "UndefinedTime", "apply_rule", "apply_ruleset", "communication_step",
    "compile_tag_system", "enumerate_X", "evolutionary_step", "filter_pass", "initial_config",
    "is_halting_word", "replay", "run", "run_tag", "tag_step", "time_of", "validate_network",
    "validate_tag",
]
