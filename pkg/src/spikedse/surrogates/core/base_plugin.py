# stdlib
from abc import ABCMeta, abstractmethod
import importlib.util
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Type

# spikedse absolute
import spikedse.logger as log

# spikedse relative
from .params import Params

PREFIX = "plugin_"


class Plugin(metaclass=ABCMeta):
    """Interface shared by loadable plugins.

    Subclasses report their `type()` (the plugin family, e.g. "surrogate"),
    their `name()` (e.g. "atan") and the sweepable `hyperparameter_space()`.
    """

    @staticmethod
    @abstractmethod
    def name() -> str:
        ...

    @staticmethod
    @abstractmethod
    def type() -> str:
        ...

    @staticmethod
    @abstractmethod
    def hyperparameter_space(*args: Any, **kwargs: Any) -> List[Params]:
        ...

    @classmethod
    def hyperparameter_grid(cls, *args: Any, **kwargs: Any) -> Dict[str, List[Any]]:
        return {p.name: p.grid() for p in cls.hyperparameter_space(*args, **kwargs)}

    @classmethod
    def fqdn(cls) -> str:
        return f"{cls.type()}.{cls.name()}"


class PluginLoader:
    """Registry over a set of ``plugin_<name>.py`` files.

    A file is imported the first time `<name>` is requested and must export
    its class as ``plugin``. Files that fail to import are logged and
    reported as unloadable; they never break the other plugins.
    """

    def __init__(self, plugin_files: Iterable[str], expected_type: Type) -> None:
        self._expected_type = expected_type
        self._files: Dict[str, Path] = {}
        for f in sorted(plugin_files):
            path = Path(f)
            if path.stem.startswith(PREFIX):
                self._files[path.stem[len(PREFIX) :]] = path
        self._loaded: Dict[str, Type] = {}

    def _import(self, name: str) -> None:
        path = self._files[name]
        try:
            module_spec = importlib.util.spec_from_file_location(f"spikedse_{path.stem}", path)
            if module_spec is None or module_spec.loader is None:
                raise ImportError(f"no loader for {path}")
            module = importlib.util.module_from_spec(module_spec)
            module_spec.loader.exec_module(module)
            cls = module.plugin
        except Exception as e:
            log.critical(f"plugin {path.name} failed to load: {e}")
            return
        log.debug(f"loaded {cls.fqdn()} from {path.name}")
        self.add(cls.name(), cls)

    def add(self, name: str, cls: Type) -> "PluginLoader":
        if name in self._loaded:
            raise ValueError(f"plugin {name} is already registered")
        if not (isinstance(cls, type) and issubclass(cls, self._expected_type)):
            raise ValueError(f"plugin {name} does not derive {self._expected_type.__name__}")
        self._loaded[name] = cls
        return self

    def list(self) -> List[str]:
        """Names imported so far."""
        return list(self._loaded)

    def list_available(self) -> List[str]:
        return sorted(set(self._files) | set(self._loaded))

    def get_type(self, name: str) -> Type:
        if name not in self._loaded:
            if name not in self._files:
                raise ValueError(f"plugin {name} doesn't exist")
            self._import(name)
        if name not in self._loaded:
            raise ValueError(f"plugin {name} cannot be loaded")
        return self._loaded[name]

    def get(self, name: str, *args: Any, **kwargs: Any) -> Any:
        return self.get_type(name)(*args, **kwargs)

    def __iter__(self) -> Iterator[str]:
        return iter(self.list_available())

    def __len__(self) -> int:
        return len(self.list_available())
