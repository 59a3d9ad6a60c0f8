import os


basedir = os.path.abspath(os.path.dirname(__file__))

class Config(object):
    MEMRICCATI_EPS = 1e-4
    MEMRICCATI_MAX_ITERATIONS = 100
    MEMRICCATI_SINGULAR_TOLERANCE = 1e-14
    MEMRICCATI_BACKEND = 'triangular'
    MEMRICCATI_INITIAL_GUESS = 'auto'
    MEMRICCATI_SCHEDULE = (129, 259, 519, 1039, 2079)
    MEMRICCATI_OUT = os.getenv('MEMRICCATI_OUT') or os.path.join(basedir, 'output')
    MEMRICCATI_STUDY_WORKERS = int(os.getenv('MEMRICCATI_STUDY_WORKERS') or 2)
    MEMRICCATI_LOG_LEVEL = 'INFO'

    @classmethod
    def init_app(cls, app):
        app.logger.setLevel(cls.MEMRICCATI_LOG_LEVEL)

class DevelopmentConfig(Config):
    DEBUG = True
    MEMRICCATI_LOG_LEVEL = 'DEBUG'

class TestingConfig(Config):
    TESTING = True
    MEMRICCATI_STUDY_WORKERS = 1
    MEMRICCATI_LOG_LEVEL = 'WARNING'

class ProductionConfig(Config):
    MEMRICCATI_LOG_FILE = os.getenv('MEMRICCATI_LOG_FILE')

    @classmethod
    def init_app(cls, app):
        Config.init_app(app)

        # keep warnings from long studies on disk
        if cls.MEMRICCATI_LOG_FILE:
            import logging
            from logging.handlers import RotatingFileHandler
            file_handler = RotatingFileHandler(cls.MEMRICCATI_LOG_FILE,
                                               maxBytes = 1024 * 1024,
                                               backupCount = 5)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s %(levelname)s %(name)s: %(message)s'))
            file_handler.setLevel(logging.WARNING)
            app.logger.addHandler(file_handler)


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,

    'default': DevelopmentConfig
}
