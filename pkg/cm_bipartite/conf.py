import importlib
import os
from types import SimpleNamespace

from cm_bipartite import defaults

ENVIRONMENT_VARIABLE = "CMB_SETTINGS_MODULE"


class Settings:
    """Caps and defaults for every operation.

    Values come from :py:mod:`cm_bipartite.defaults`, overridden by the module
    named in the ``CMB_SETTINGS_MODULE`` environment variable (if set) or by an
    explicit :py:meth:`configure` call."""

    def __init__(self):
        self._initialized = False

    def _configure_from_env(self):
        settings_module = os.environ.get(ENVIRONMENT_VARIABLE)
        mod = importlib.import_module(settings_module) if settings_module else None
        self._setup(mod)

    def _setup(self, settings_module):
        for setting in dir(defaults):
            if setting.isupper():
                setattr(self, setting, getattr(defaults, setting))

        for setting in dir(settings_module):
            if setting.isupper():
                setattr(self, setting, getattr(settings_module, setting))

        self._initialized = True

    def __getattr__(self, name):
        if name.startswith('_'):
            raise AttributeError(name)
        if not self._initialized:
            self._configure_from_env()
        try:
            return self.__dict__[name]
        except KeyError:
            raise AttributeError(f'Unknown setting {name}') from None

    def configure(self, settings):
        if self._initialized:
            raise RuntimeError('Settings already configured.')
        self._setup(settings)

    def configure_from_dict(self, dct):
        self.configure(SimpleNamespace(**dct))


#: default :py:class:`cm_bipartite.conf.Settings` instance
settings = Settings()


def resolve(value, name):
    """Return `value`, or the setting `name` when `value` is None."""
    if value is None:
        return getattr(settings, name)
    return value
