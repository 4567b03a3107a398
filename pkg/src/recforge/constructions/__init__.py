from .ip import FSGenerators, extract_ip, hindman_search, in_runs, rapid_ip, runs_of
from .md import EntropyRow, MdStage, MdTrace, entropy_bound_check, md_point
from .sm import SmStage, SmTrace, sm_point

__all__ = [
    "FSGenerators", "extract_ip", "hindman_search", "rapid_ip", "runs_of", "in_runs",
    "MdStage", "MdTrace", "md_point", "EntropyRow", "entropy_bound_check",
    "SmStage", "SmTrace", "sm_point",
]
