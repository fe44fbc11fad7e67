from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    """Tunables shared by the solvers, oracles and generators."""
    pq_check_limit: int = 2_000_000  # search nodes for check_pq_property
    min_stab_limit: int = 2_000_000  # candidate combinations for min_stab_bruteforce
    sweep_threshold: int = 8  # base case switches to the sweep above this family size
    chan_base_size: int = 9
    general_position_attempts: int = 50
    coordinate_denominator: int = 1000

    def __post_init__(self):
        for name in ("pq_check_limit", "min_stab_limit", "chan_base_size",
                     "general_position_attempts", "coordinate_denominator"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.sweep_threshold < 0:
            raise ValueError("sweep_threshold must be non-negative")

    def replace(self, **changes) -> "Settings":
        return replace(self, **changes)


DEFAULT_SETTINGS = Settings()
