#!/usr/bin/env python3
"""
Scenario files

A scenario is a flat text file of ``key = number`` lines. ``#`` starts a
comment (whole line or trailing). Angles are in radians, distances in
metres. Example::

    # LED and receiver front end
    m = 1
    A_r = 1e-4
    T_s = 1
    g = 1
    Psi = 1.2
    bob.D = 2.5
    bob.phi = 0.1
    bob.psi = 0.1
    eve.D = 3.0
    ...
"""

import math
from pathlib import Path
from typing import Dict, Union

from pydantic import BaseModel, ConfigDict

from app.core.exceptions import ScenarioError
from app.models.channel import Geometry, LambertianParams, NoiseParams, WiretapChannel
from app.services.channel import los_gain, make_channel
from app.utils.helpers import build_model

LAMBERTIAN_KEYS = ("m", "A_r", "T_s", "g", "Psi")
RECEIVER_KEYS = ("D", "phi", "psi", "sigma2", "varsigma2")
REQUIRED_KEYS = LAMBERTIAN_KEYS + tuple(
    f"{side}.{key}" for side in ("bob", "eve") for key in RECEIVER_KEYS
)


class Scenario(BaseModel):
    """Parsed indoor scenario"""
    model_config = ConfigDict(frozen=True)

    lambertian: LambertianParams
    bob: Geometry
    eve: Geometry
    noise_B: NoiseParams
    noise_E: NoiseParams

    def channel(self) -> WiretapChannel:
        """Wiretap channel with LoS gains computed from the geometry."""
        H_B = los_gain(self.bob, self.lambertian)
        if H_B <= 0:
            raise ScenarioError("Bob is outside the LED field of view (H_B = 0)", {"key": "bob.psi"})
        return make_channel(H_B, los_gain(self.eve, self.lambertian), self.noise_B, self.noise_E)


def parse_scenario_text(text: str, source: str = "<scenario>") -> Dict[str, float]:
    """Parse ``key = number`` lines into a dict."""
    values: Dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(
                f"{source}:{lineno}: expected 'key = number'", {"line": lineno, "source": source}
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in REQUIRED_KEYS:
            raise ScenarioError(
                f"{source}:{lineno}: unknown key '{key}'", {"line": lineno, "key": key}
            )
        if key in values:
            raise ScenarioError(
                f"{source}:{lineno}: duplicate key '{key}'", {"line": lineno, "key": key}
            )
        try:
            number = float(value)
        except ValueError:
            raise ScenarioError(
                f"{source}:{lineno}: '{value}' is not a number", {"line": lineno, "key": key}
            ) from None
        if not math.isfinite(number):
            raise ScenarioError(
                f"{source}:{lineno}: '{key}' must be finite", {"line": lineno, "key": key}
            )
        values[key] = number
    return values


def build_scenario(values: Dict[str, float]) -> Scenario:
    """Validate a parsed key/value mapping into a Scenario."""
    missing = [key for key in REQUIRED_KEYS if key not in values]
    if missing:
        raise ScenarioError(f"missing required key '{missing[0]}'", {"key": missing[0], "missing": missing})

    def receiver(side: str):
        geometry = build_model(
            Geometry, D=values[f"{side}.D"], phi=values[f"{side}.phi"], psi=values[f"{side}.psi"]
        )
        noise = build_model(
            NoiseParams, sigma2=values[f"{side}.sigma2"], varsigma2=values[f"{side}.varsigma2"]
        )
        return geometry, noise

    lambertian = build_model(LambertianParams, **{key: values[key] for key in LAMBERTIAN_KEYS})
    bob, noise_B = receiver("bob")
    eve, noise_E = receiver("eve")
    return Scenario(lambertian=lambertian, bob=bob, eve=eve, noise_B=noise_B, noise_E=noise_E)


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc.strerror}", {"path": str(path)}) from exc
    return build_scenario(parse_scenario_text(text, source=str(path)))
