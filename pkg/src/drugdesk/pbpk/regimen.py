"""Dose regimens and their key=value file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

ROUTES = ("oral", "iv_bolus", "iv_infusion")


class BadRegimen(ValueError):
    pass


@dataclass(frozen=True)
class DoseRegimen:
    """One drug given by one route: `dose` mg at each time in `schedule`
    (hours). Infusions run `duration` hours from each scheduled start."""

    route: str
    dose: float
    schedule: tuple[float, ...] = (0.0,)
    duration: float | None = None

    def __post_init__(self):
        if self.route not in ROUTES:
            raise BadRegimen(f"route must be one of {ROUTES}, got {self.route!r}")
        if self.dose <= 0:
            raise BadRegimen(f"dose must be positive, got {self.dose}")
        if not self.schedule:
            raise BadRegimen("schedule must contain at least one administration time")
        if any(t < 0 for t in self.schedule):
            raise BadRegimen("administration times must be >= 0")
        if list(self.schedule) != sorted(set(self.schedule)):
            raise BadRegimen("administration times must be strictly increasing")
        if self.route == "iv_infusion":
            if self.duration is None or self.duration <= 0:
                raise BadRegimen("infusion requires a positive duration")
        elif self.duration is not None:
            raise BadRegimen(f"duration only applies to infusions, not {self.route}")


def every(interval_h: float, count: int) -> tuple[float, ...]:
    """Schedule helper: count administrations spaced interval_h apart."""
    if interval_h <= 0 or count < 1:
        raise BadRegimen("interval must be positive and count >= 1")
    return tuple(i * interval_h for i in range(count))


def load_regimen(path: str | Path) -> DoseRegimen:
    """Parse a `key=value` regimen file.

    Keys: route, dose, times (comma-separated hours, default "0"),
    duration (infusion only). Example:

        route=oral
        dose=200
        times=0,12,24,36,48
    """
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadRegimen(f"{path}:{lineno}: expected key=value")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()

    missing = {"route", "dose"} - values.keys()
    if missing:
        raise BadRegimen(f"{path}: missing keys {sorted(missing)}")
    unknown = values.keys() - {"route", "dose", "times", "duration"}
    if unknown:
        raise BadRegimen(f"{path}: unknown keys {sorted(unknown)}")

    try:
        schedule = tuple(
            float(t) for t in values.get("times", "0").split(",") if t.strip()
        )
        return DoseRegimen(
            route=values["route"],
            dose=float(values["dose"]),
            schedule=schedule,
            duration=float(values["duration"]) if "duration" in values else None,
        )
    except ValueError as exc:
        if isinstance(exc, BadRegimen):
            raise
        raise BadRegimen(f"{path}: {exc}") from None
