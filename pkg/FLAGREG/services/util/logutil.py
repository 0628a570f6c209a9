import logging
from logging.handlers import RotatingFileHandler
import os

FORMATS = {
    "short": '[%(name)s.%(funcName)s] : %(message)s',
    "medium": '[%(name)s.%(funcName)s] - %(asctime)-15s: %(message)s',
    "long": '[%(name)s.%(funcName)s] - %(asctime)-15s %(filename)s %(levelname)s: %(message)s'
}


class LoggingUtil(object):
    """ Logging utility controlling format and setting initial logging level """

    # one rotating file per process, shared by every module logger
    _file_handlers = {}

    @staticmethod
    def log_file_path():
        log_dir = os.environ.get('FLAGREG_LOG_DIR') or os.path.join(os.path.dirname(__file__), '..', '..', 'logs')
        return os.path.join(log_dir, 'flagreg.log')

    @staticmethod
    def resolve_level(level):
        """ Accept logging constants as well as names such as 'debug' coming from flagreg.conf. """
        if level is None:
            return logging.INFO
        if isinstance(level, str):
            resolved = logging.getLevelName(level.strip().upper())
            return resolved if isinstance(resolved, int) else logging.INFO
        return level

    @staticmethod
    def init_logging(name, level=logging.INFO, format_sel='medium', log_file_level=None):
        logger = logging.getLogger(name)

        # already configured by an earlier import of the same module
        if logger.handlers:
            return logger

        level = LoggingUtil.resolve_level(level)
        formatter = logging.Formatter(FORMATS.get(format_sel or 'medium', FORMATS['medium']))
        logger.setLevel(level)

        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(formatter)
        logger.addHandler(stream_handler)

        file_handler = LoggingUtil._file_handler(formatter, LoggingUtil.resolve_level(log_file_level or level))
        if file_handler is not None:
            logger.addHandler(file_handler)

        return logger

    @staticmethod
    def _file_handler(formatter, level):
        path = os.path.abspath(LoggingUtil.log_file_path())
        if not os.access(os.path.dirname(path), os.W_OK):
            # read-only installs log to the console only
            return None
        handler = LoggingUtil._file_handlers.get(path)
        if handler is None:
            # 1mb per file, 10 backups
            handler = RotatingFileHandler(filename=path, maxBytes=1000000, backupCount=10)
            handler.setFormatter(formatter)
            handler.setLevel(level)
            LoggingUtil._file_handlers[path] = handler
        return handler
