"""The society file format: JSON in, JSON out, byte-stable round trips.

All rationals travel as canonical strings ("3", "-1/4"); JSON numbers are
rejected so no value can silently pass through floating point.  Emission
follows a fixed field order and writes table entries in state order, so
emit -> parse -> emit reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import GridDim, StateSpace, UtilityTable
from .rationals import format_rational, parse_rational
from .society import Profile, Society


class SocietyFileError(ValueError):
    """Malformed society file; carries the offending field path."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def _need(payload: dict, key: str, kind, where: str):
    if key not in payload:
        raise SocietyFileError(f"missing field {key!r}", where)
    value = payload[key]
    if not isinstance(value, kind):
        raise SocietyFileError(
            f"field {key!r} must be {kind.__name__}, got {type(value).__name__}", where
        )
    return value


def _parse_scalar(text: Any, where: str) -> Fraction:
    if not isinstance(text, str):
        raise SocietyFileError(
            f"rationals must be strings like \"1/4\", got {type(text).__name__}", where
        )
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise SocietyFileError(str(exc), where) from None


def _parse_space(payload: Any) -> StateSpace:
    where = "space"
    if not isinstance(payload, dict):
        raise SocietyFileError("must be an object", where)
    kind = _need(payload, "kind", str, where)
    if kind == "explicit":
        states = _need(payload, "states", list, where)
        if not states or not all(isinstance(s, str) for s in states):
            raise SocietyFileError("states must be a nonempty list of strings", where)
        return StateSpace.explicit(states)
    if kind == "product_grid":
        dims_payload = _need(payload, "dims", list, where)
        dims = []
        for i, dim in enumerate(dims_payload):
            dwhere = f"space.dims[{i}]"
            if not isinstance(dim, dict):
                raise SocietyFileError("must be an object", dwhere)
            name = _need(dim, "name", str, dwhere)
            lo = _parse_scalar(_need(dim, "min", str, dwhere), dwhere + ".min")
            hi = _parse_scalar(_need(dim, "max", str, dwhere), dwhere + ".max")
            step = _parse_scalar(
                _need(dim, "resolution", str, dwhere), dwhere + ".resolution"
            )
            try:
                dims.append(GridDim(name=name, lo=lo, hi=hi, step=step))
            except ValueError as exc:
                raise SocietyFileError(str(exc), dwhere) from None
        try:
            return StateSpace.product_grid(dims)
        except ValueError as exc:
            raise SocietyFileError(str(exc), where) from None
    raise SocietyFileError(f"unknown space kind {kind!r}", where)


def _parse_table(payload: Any, space: StateSpace, where: str) -> UtilityTable:
    if not isinstance(payload, dict):
        raise SocietyFileError("utility table must be an object", where)
    values = {}
    for state, text in payload.items():
        if state not in space:
            raise SocietyFileError(f"unknown state {state!r}", where)
        values[state] = _parse_scalar(text, f"{where}.{state}")
    missing = [s for s in space.states if s not in values]
    if missing:
        raise SocietyFileError(f"missing states (first: {missing[0]!r})", where)
    return UtilityTable(values)


def _parse_profile(payload: Any, space: StateSpace, where: str) -> tuple[list[str], Profile]:
    if not isinstance(payload, dict):
        raise SocietyFileError("must be an object", where)
    agents_payload = _need(payload, "agents", list, where)
    if not agents_payload:
        raise SocietyFileError("agents list must be nonempty", where)
    names: list[str] = []
    tables: dict[str, UtilityTable] = {}
    for i, entry in enumerate(agents_payload):
        awhere = f"{where}.agents[{i}]"
        if not isinstance(entry, dict):
            raise SocietyFileError("must be an object", awhere)
        name = _need(entry, "name", str, awhere)
        if name in tables:
            raise SocietyFileError(f"duplicate agent {name!r}", awhere)
        table = _parse_table(_need(entry, "utility", dict, awhere), space, awhere + ".utility")
        names.append(name)
        tables[name] = table
    ethical = _parse_table(_need(payload, "ethical", dict, where), space, where + ".ethical")
    return names, Profile(tables, ethical)


def payload_to_society(payload: Any) -> Society:
    if not isinstance(payload, dict):
        raise SocietyFileError("top level must be an object")
    space = _parse_space(_need(payload, "space", dict, "$"))
    base_names, base = _parse_profile(payload, space, "$")
    profiles: dict[str, Profile | None] = {"nm_profile": None, "alt_profile": None}
    for key in profiles:
        if key in payload:
            names, profile = _parse_profile(payload[key], space, key)
            if names != base_names:
                raise SocietyFileError("agent names must match the base profile", key)
            profiles[key] = profile
    metadata = payload.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SocietyFileError("must be an object", "metadata")
    try:
        return Society(
            space=space,
            agents=tuple(base_names),
            base=base,
            nm=profiles["nm_profile"],
            alt=profiles["alt_profile"],
            metadata=dict(metadata),
        )
    except ValueError as exc:
        raise SocietyFileError(str(exc)) from None


def parse_society(path: str) -> Society:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SocietyFileError(f"invalid JSON: {exc}") from None
    return payload_to_society(payload)


def _table_payload(table: UtilityTable, space: StateSpace) -> dict[str, str]:
    return {s: format_rational(table[s]) for s in space.states}


def _profile_payload(agents, profile: Profile, space: StateSpace) -> dict:
    return {
        "agents": [
            {"name": a, "utility": _table_payload(profile.tables[a], space)} for a in agents
        ],
        "ethical": _table_payload(profile.ethical, space),
    }


def society_to_payload(soc: Society) -> dict:
    payload: dict = {}
    if soc.metadata:
        payload["metadata"] = dict(soc.metadata)
    if soc.space.kind == "grid":
        payload["space"] = {
            "kind": "product_grid",
            "dims": [
                {
                    "name": d.name,
                    "min": format_rational(d.lo),
                    "max": format_rational(d.hi),
                    "resolution": format_rational(d.step),
                }
                for d in soc.space.dims
            ],
        }
    else:
        payload["space"] = {"kind": "explicit", "states": list(soc.space.states)}
    base = _profile_payload(soc.agents, soc.base, soc.space)
    payload["agents"] = base["agents"]
    payload["ethical"] = base["ethical"]
    if soc.nm is not None:
        payload["nm_profile"] = _profile_payload(soc.agents, soc.nm, soc.space)
    if soc.alt is not None:
        payload["alt_profile"] = _profile_payload(soc.agents, soc.alt, soc.space)
    return payload


def emit_society(soc: Society) -> str:
    return json.dumps(society_to_payload(soc), indent=2) + "\n"
