from pydantic_settings import BaseSettings, SettingsConfigDict

class GaloisCpmSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="GALOIS_CPM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=False,
        frozen=True,
    )

    max_dim: int = 4096
    max_group_order: int = 48

    fixed_field_search_height: int = 2
    sample_height: int = 5
    default_seed: int = 42

    search_max_states: int = 200000

    verify_samples: int = 20
    verify_workers: int = 1
    verify_acceptance: bool = False

    log_level: str = "WARNING"

appSettings = GaloisCpmSettings()
