from .skip import (
    EmptyLanguageError,
    SkipTables,
    UntimedNFA,
    build_skip_tables,
    kmp_skip_table,
    min_match_length,
    position_labels,
    quick_search_table,
    untimed_projection,
)
from .ta import (
    GUARD_OPS,
    TERMINAL,
    ClockGuard,
    Diagnostic,
    InvalidAutomatonError,
    Location,
    TimedAutomaton,
    Transition,
    dump_ta,
    load_ta,
    make_ta,
    ta_from_dict,
    ta_to_dict,
    validate_ta,
)
from .tre import (
    Atom,
    Concat,
    Plus,
    Star,
    TRESyntaxError,
    Union,
    Within,
    compile_tre,
    parse_tre,
)
