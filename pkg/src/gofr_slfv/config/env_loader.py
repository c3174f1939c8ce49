"""Prefix-scoped environment loading for gofr-slfv settings.

Only ``{prefix}_*`` keys are collected. Precedence, low to high: the .env
file, os.environ, explicit overrides. The .env file is the ``env_file``
argument, else ``{prefix}_ENV_FILE``, else ``./.env``.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Dict, Mapping, Optional

from dotenv import dotenv_values


class EnvLoader:
    def __init__(
        self,
        prefix: str,
        env_file: Optional[Path | str] = None,
        use_os_environ: bool = True,
    ) -> None:
        self.prefix = prefix
        self.env_file = Path(env_file) if env_file else None
        self.use_os_environ = use_os_environ

    def _owns(self, key: str) -> bool:
        return key.startswith(f"{self.prefix}_")

    def resolve_env_file(self) -> Path:
        if self.env_file is not None:
            return self.env_file
        named = os.environ.get(f"{self.prefix}_ENV_FILE") if self.use_os_environ else None
        return Path(named) if named else Path.cwd() / ".env"

    def load(self, overrides: Optional[Mapping[str, object]] = None) -> Dict[str, str]:
        data: Dict[str, str] = {}
        env_path = self.resolve_env_file()
        if env_path.is_file():
            for key, value in dotenv_values(env_path).items():
                if value is not None and self._owns(key):
                    data[key] = value
        if self.use_os_environ:
            data.update({k: v for k, v in os.environ.items() if self._owns(k)})
        if overrides:
            data.update({k: str(v) for k, v in overrides.items() if self._owns(k)})
        return data


__all__ = ["EnvLoader"]
