"""Deterministic verification battery behind the `suite` subcommand.

One report dict per run, a pure function of the seed count: per-check
pass/fail counters plus a capped list of failure records.  Each seed
exercises the roundtrip equivalences, the etale and connected agreement
of the two realizations, duality involutivity and splitting independence,
exactness of the canonical sequences, and the universal-extension square.
"""

from __future__ import annotations

from .errors import FHError
from .fhs import (
    canonical_etale,
    double_dual_compare,
    dual_splitting_iso,
    etale_part,
    linear_to_connected,
    seq_special,
)
from .generator import FHS_PROFILES, MOTIVE_PROFILES, gen_fhs, gen_motive
from .motives import connected_part, etale_motive, seq_special_motive
from .realize import (
    periods_square,
    roundtrip_fm,
    roundtrip_mf,
    t_formal,
    t_hodge,
)

MAX_FAILURES = 20


def _record(report: dict, check: str, ok: bool, seed: int, detail: str = "") -> None:
    slot = report["checks"].setdefault(check, {"pass": 0, "fail": 0})
    slot["pass" if ok else "fail"] += 1
    if not ok and len(report["failures"]) < MAX_FAILURES:
        report["failures"].append({"check": check, "seed": seed, "detail": detail})


def _attempt(report: dict, check: str, seed: int, thunk) -> None:
    try:
        ok = thunk()
        _record(report, check, bool(ok), seed)
    except FHError as exc:
        _record(report, check, False, seed, exc.code)


def run_suite(seeds: int) -> dict:
    """The full battery over `seeds` deterministic instances per check."""
    report: dict = {
        "format_version": 1,
        "kind": "suite-report",
        "seeds": seeds,
        "checks": {},
        "failures": [],
    }
    for i in range(seeds):
        fhs_profile = FHS_PROFILES[i % len(FHS_PROFILES)]
        motive_profile = MOTIVE_PROFILES[i % len(MOTIVE_PROFILES)]

        def fm_ok():
            roundtrip_fm(gen_fhs(fhs_profile, i))
            return True

        def mf_ok():
            roundtrip_mf(gen_motive(motive_profile, i))
            return True

        def etale_agree():
            met = gen_motive("etale", i)
            return etale_part(t_formal(met)) == canonical_etale(t_hodge(met))

        def connected_agree():
            mc = gen_motive("connected", i)
            return t_formal(mc) == linear_to_connected(mc.u0)

        def dual_involutive():
            double_dual_compare(gen_fhs("general", i))
            return True

        def dual_split():
            dual_splitting_iso(gen_fhs("general", i))
            return True

        def special_seq():
            x = gen_fhs("special", i)
            seq_special(x)
            m = gen_motive("special", i)
            seq_special_motive(m)
            return connected_part(m).is_connected() and etale_motive(m).is_etale()

        def periods():
            out = periods_square(gen_motive("etale", i))
            return out["ok"]

        _attempt(report, "roundtrip_fm", i, fm_ok)
        _attempt(report, "roundtrip_mf", i, mf_ok)
        _attempt(report, "etale_realizations_agree", i, etale_agree)
        _attempt(report, "connected_realization_identity", i, connected_agree)
        _attempt(report, "double_dual", i, dual_involutive)
        _attempt(report, "dual_splitting_independent", i, dual_split)
        _attempt(report, "special_sequence_exact", i, special_seq)
        _attempt(report, "universal_extension_square", i, periods)
    report["ok"] = all(v["fail"] == 0 for v in report["checks"].values())
    return report
