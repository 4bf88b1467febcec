"""Democratic-money ledger engine and economic simulator.

The heavy lifting lives in the compiled ``_popledger`` extension; this
package just re-exports its surface.
"""

try:
    from ._popledger import (  # type: ignore[attr-defined]
        Ledger,
        LedgerError,
        adoption_reward_factor,
        estimate_basic_income,
        poverty_gap,
        run_scenario,
        scenario_csv,
    )
except ImportError:  # pragma: no cover - build-tree layout
    from _popledger import (  # type: ignore[no-redef]
        Ledger,
        LedgerError,
        adoption_reward_factor,
        estimate_basic_income,
        poverty_gap,
        run_scenario,
        scenario_csv,
    )

__all__ = [
    "Ledger",
    "LedgerError",
    "adoption_reward_factor",
    "estimate_basic_income",
    "poverty_gap",
    "run_scenario",
    "scenario_csv",
]
