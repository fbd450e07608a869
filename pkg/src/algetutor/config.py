"""Service configuration: built-in defaults, JSON config file, env overrides.

Precedence: environment > config file > built-in defaults. The config file
path itself comes from --config / ALGETUTOR_CONFIG.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .tracing import BktParams

ENV_PREFIX = "ALGETUTOR_"


@dataclass
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    storage_dir: Path = Path("./data")
    bkt_defaults: BktParams = field(default_factory=BktParams)
    bkt_per_kc: dict[str, BktParams] = field(default_factory=dict)
    mastery_threshold: float = 0.95
    admin_token: str = "change-me"
    session_ttl_hours: float = 12.0


def _params_from_dict(doc: dict, base: BktParams) -> BktParams:
    return BktParams(
        p_init=doc.get("p_init", base.p_init),
        p_transit=doc.get("p_transit", base.p_transit),
        p_slip=doc.get("p_slip", base.p_slip),
        p_guess=doc.get("p_guess", base.p_guess),
    )


def _apply_file(config: AppConfig, path: Path) -> None:
    doc = json.loads(path.read_text(encoding="utf-8"))
    if "host" in doc:
        config.host = str(doc["host"])
    if "port" in doc:
        config.port = int(doc["port"])
    if "storage_dir" in doc:
        config.storage_dir = Path(doc["storage_dir"])
    if "mastery_threshold" in doc:
        config.mastery_threshold = float(doc["mastery_threshold"])
    if "admin_token" in doc:
        config.admin_token = str(doc["admin_token"])
    if "session_ttl_hours" in doc:
        config.session_ttl_hours = float(doc["session_ttl_hours"])
    if "bkt" in doc:
        config.bkt_defaults = _params_from_dict(doc["bkt"], config.bkt_defaults)
    for kc_id, overrides in doc.get("bkt_per_kc", {}).items():
        config.bkt_per_kc[kc_id] = _params_from_dict(overrides, config.bkt_defaults)


def _apply_env(config: AppConfig, env: dict[str, str]) -> None:
    def get(name: str) -> str | None:
        return env.get(ENV_PREFIX + name)

    if get("HOST"):
        config.host = get("HOST")
    if get("PORT"):
        config.port = int(get("PORT"))
    if get("STORAGE_DIR"):
        config.storage_dir = Path(get("STORAGE_DIR"))
    if get("MASTERY_THRESHOLD"):
        config.mastery_threshold = float(get("MASTERY_THRESHOLD"))
    if get("ADMIN_TOKEN"):
        config.admin_token = get("ADMIN_TOKEN")
    if get("SESSION_TTL_HOURS"):
        config.session_ttl_hours = float(get("SESSION_TTL_HOURS"))
    bkt_overrides = {}
    for name in ("P_INIT", "P_TRANSIT", "P_SLIP", "P_GUESS"):
        value = get("BKT_" + name)
        if value is not None:
            bkt_overrides[name.lower()] = float(value)
    if bkt_overrides:
        config.bkt_defaults = _params_from_dict(bkt_overrides, config.bkt_defaults)


def load_config(path: Path | str | None = None, env: dict[str, str] | None = None) -> AppConfig:
    env = dict(os.environ if env is None else env)
    config = AppConfig()
    file_path = Path(path) if path else (
        Path(env[ENV_PREFIX + "CONFIG"]) if ENV_PREFIX + "CONFIG" in env else None
    )
    if file_path is not None:
        _apply_file(config, file_path)
    _apply_env(config, env)
    return config
