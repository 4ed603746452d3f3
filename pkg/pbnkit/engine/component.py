"""Component: a Configurable with a context.

The config of a component says *what* it computes; the context says
*how* to run it (worker count, size caps, ...) and never changes the
result. A component's context is, from lowest to highest priority:

    1. `pbnkit.default_context`, which can be changed at runtime,
    2. the class's `default_context`,
    3. the `context` passed in,
    4. the sub-dict of the passed context stored under the component's
       kind, so one context can address several nested components.

"""

from pbnkit import logger
from .config import Configurable


class Component(Configurable):

    default_context = {}

    def __init__(self, context={}):  # pylint: disable=dangerous-default-value
        # looked up here so changes at runtime are seen
        from pbnkit import default_context as global_default_context

        own = context.get(self.get_kind(), {})
        self.context = {
            **global_default_context,
            **self.__class__.default_context,
            **{k: v for k, v in context.items() if k != self.get_kind()},
            **own,
        }

        logger.debug(f"Context for {self.get_kind()} is {self.context}.")

    def get_hash(self):
        return self.get_config_hash()
