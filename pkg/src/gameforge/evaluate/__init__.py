from gameforge.evaluate.judge import (
    CodeJudgeScores,
    GameJudgeScores,
    judge_code,
    judge_game,
    judge_pcg,
    judge_provenance,
)
from gameforge.evaluate.report import (
    EvaluationReport,
    build_report,
    render_table,
    summarize,
)
from gameforge.evaluate.scoring import (
    PcgSuccess,
    aggregate_game_score,
    compute_gcs,
    compute_pcg_success,
    mean_score,
    merge_pcg_success,
    round_half_up,
)
from gameforge.evaluate.testplan import (
    CommandOutcome,
    ExecutionTrace,
    TestCommand,
    fallback_plan,
    generate_test_plan,
    normalize_plan,
    run_tests,
)

__all__ = [
    "CodeJudgeScores",
    "CommandOutcome",
    "EvaluationReport",
    "ExecutionTrace",
    "GameJudgeScores",
    "PcgSuccess",
    "TestCommand",
    "aggregate_game_score",
    "build_report",
    "compute_gcs",
    "compute_pcg_success",
    "fallback_plan",
    "generate_test_plan",
    "judge_code",
    "judge_game",
    "judge_pcg",
    "judge_provenance",
    "mean_score",
    "merge_pcg_success",
    "normalize_plan",
    "render_table",
    "round_half_up",
    "run_tests",
    "summarize",
]
