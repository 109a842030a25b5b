
from app.core.config import settings

import logging
from logging.handlers import RotatingFileHandler


logger = logging.getLogger("isoperimetry")
logger.setLevel(getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO))
logger.propagate = False

formatter = logging.Formatter(
    '%(asctime)s - %(name)s - %(levelname)s - %(message)s - [%(filename)s:%(lineno)d]'
)

if settings.LOG_TO_FILE:
    settings.LOG_DIR.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(settings.LOG_DIR / "isoperimetry.log", maxBytes=5*1024*1024, backupCount=5)
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logging.DEBUG)
    logger.addHandler(file_handler)

if settings.DEBUG:
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.DEBUG)
    logger.addHandler(console_handler)

if not logger.handlers:
    logger.addHandler(logging.NullHandler())


def get_logger(name: str = None) -> logging.Logger:
    """
    Retrieve a logger instance, either the main toolkit logger or a child logger.

    @param name: Optional name for a child logger.
    @return: The logger instance (either the main logger or a child logger).
    """
    # If a name is provided, return a child logger; otherwise, return the main logger
    return logger if not name else logger.getChild(name)
