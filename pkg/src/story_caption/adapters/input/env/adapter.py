"""Pipeline configuration adapter."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from pydantic import ValidationError
from pydantic_settings import PydanticBaseSettingsSource, TomlConfigSettingsSource, YamlConfigSettingsSource

from story_caption.application.dtos import EncodingConfig, InputPaths, PipelineConfig
from story_caption.domain.exceptions import InvalidConfigurationError
from story_caption.domain.value_objects import DatasetProfile, SlidingWindowConfig

from .settings import PipelineSettings

if TYPE_CHECKING:
    from collections.abc import Mapping
    from pathlib import Path

LOGGER = logging.getLogger(__name__)

_FILE_SOURCES: dict[str, type[TomlConfigSettingsSource] | type[YamlConfigSettingsSource]] = {
    ".toml": TomlConfigSettingsSource,
    ".yaml": YamlConfigSettingsSource,
    ".yml": YamlConfigSettingsSource,
}


def _settings_class(config_file: Path | None) -> type[PipelineSettings]:
    """Return a settings class that reads ``config_file`` below init values and environment."""
    if config_file is None:
        return PipelineSettings
    if not config_file.is_file():
        message = f"Config file does not exist: {config_file}"
        raise InvalidConfigurationError(message)
    source_class = _FILE_SOURCES.get(config_file.suffix.lower())
    if source_class is None:
        message = f"Config file must be .toml, .yaml or .yml: {config_file}"
        raise InvalidConfigurationError(message)

    class FileBackedSettings(PipelineSettings):
        @classmethod
        def settings_customise_sources(
            cls,
            settings_cls: type[PipelineSettings],  # type: ignore[override]
            init_settings: PydanticBaseSettingsSource,
            env_settings: PydanticBaseSettingsSource,
            dotenv_settings: PydanticBaseSettingsSource,  # noqa: ARG003
            file_secret_settings: PydanticBaseSettingsSource,  # noqa: ARG003
        ) -> tuple[PydanticBaseSettingsSource, ...]:
            return (init_settings, env_settings, source_class(settings_cls, config_file))

    return FileBackedSettings


class SettingsAdapter:
    """Load the pipeline configuration from CLI overrides, environment and a config file."""

    def load(self, config_file: Path | None = None, overrides: Mapping[str, Any] | None = None) -> PipelineConfig:
        """Load, validate and resolve settings into a :class:`PipelineConfig`."""
        try:
            settings = _settings_class(config_file)(**dict(overrides or {}))
        except ValidationError as exc:
            message = f"Invalid configuration: {exc}"
            raise InvalidConfigurationError(message) from exc

        profile = DatasetProfile(settings.profile)
        threshold = profile.resolve_threshold(settings.window.score_threshold)
        window = SlidingWindowConfig(
            lengths=tuple(settings.window.lengths),
            stride=settings.window.stride,
            nms_iou=settings.window.nms_iou,
            score_threshold=threshold,
            cross_class_nms=settings.window.cross_class_nms,
        )
        config = PipelineConfig(
            profile=profile,
            window=window,
            inputs=InputPaths(**settings.inputs.model_dump()),
            encoding=EncodingConfig(**settings.encoding.model_dump()),
            seed=settings.seed,
            threads=settings.threads,
            output_dir=settings.output_dir,
            grammar_strict=settings.grammar_strict,
            bank_max_instances=settings.bank_max_instances,
            boundary_token=settings.boundary_token,
            missing_caption_policy=settings.missing_caption_policy,
            sweep_thresholds=tuple(settings.sweep_thresholds),
            log_level=settings.log_level,
            log_format=settings.log_format,
        )
        LOGGER.debug(
            "Configuration resolved",
            extra={
                "component": self.__class__.__name__,
                "profile": str(profile),
                "score_threshold": threshold,
                "config_file": None if config_file is None else str(config_file),
            },
        )
        return config
