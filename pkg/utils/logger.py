import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union

from pythonjsonlogger import jsonlogger

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(
    name: str,
    log_file: Optional[str] = None,
    level: Union[int, str] = logging.INFO,
    max_size: int = 1024 * 1024,  # 1MB
    backup_count: int = 5,
    json_format: bool = False,
    log_format: str = LOG_FORMAT
) -> logging.Logger:
    """Configure logger with console and optional file handlers."""
    logger = logging.getLogger(name)
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    logger.setLevel(level)

    # Already configured
    if getattr(logger, '_toolkit_configured', False):
        return logger

    formatter = logging.Formatter(log_format)

    # Console handler
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # File handler if log_file specified
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_size,
            backupCount=backup_count,
            encoding='utf-8'
        )
        if json_format:
            file_handler.setFormatter(jsonlogger.JsonFormatter(log_format))
        else:
            file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger._toolkit_configured = True
    return logger


def configure_from_config(config: dict, level_override: Optional[str] = None) -> logging.Logger:
    """Configure the package loggers from the `logging` config section."""
    section = config.get('logging', {})
    level = level_override or section.get('level', 'INFO')
    root = setup_logger(
        'conetoolkit',
        log_file=section.get('file'),
        level=level,
        json_format=bool(section.get('json', False)),
        log_format=section.get('format') or LOG_FORMAT
    )
    # Library modules log under their own package names.
    for package in ('exactnum', 'cones', 'tensorcone', 'dim3lab',
                    'retractlab', 'ballcones', 'gptnorms', 'cli'):
        child = logging.getLogger(package)
        child.setLevel(root.level)
        for handler in root.handlers:
            if handler not in child.handlers:
                child.addHandler(handler)
        child.propagate = False
    return root
