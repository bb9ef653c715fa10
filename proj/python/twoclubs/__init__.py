"""Boroughs, maximal 2-clubs and regional pivots of interlock networks."""

from ._core import (
    BudgetExceeded,
    ClubRecord,
    ClubStore,
    Graph,
    NoClubsError,
    ParseError,
    PivotReport,
    ScopeResult,
    analyze,
    borough_nodes,
    boroughs,
    classify,
    components,
    coterie_ranking,
    edge_on_short_cycle,
    enumerate_clubs,
    export_club,
    interlock_matrix,
    is_2club,
    is_maximal,
    load_graph,
    load_graph_files,
    oracle_enumerate,
    percent_text,
    scope,
    select_pivot,
    stats,
)

__all__ = [name for name in dir() if not name.startswith("_")]
