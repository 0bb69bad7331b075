from typing import Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="SEPDEC_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    # Diagnostics on stderr
    LOG: Literal["debug", "info"] = "info"

    # Optional TOML overriding the packaged config.toml
    CONFIG: Optional[str] = None


def get_settings() -> Settings:
    # Re-read on every call so tests can monkeypatch the environment.
    return Settings()
