"""Rule file -> context['rulebase']."""
import logging

from collectors.base import BaseCollector
from core.errors import ConfigError
from rules.parser import parse_rules

logger = logging.getLogger("evret")


class RulebaseCollector(BaseCollector):
    def collect(self, context: dict) -> None:
        if not self.run.rules:
            raise ConfigError("no rule file given (--rules)")
        source = self.store.read_text(self.run.rules)
        rulebase = parse_rules(source)
        context["rulebase"] = rulebase
        logger.info("Rules: %d rules loaded from %s", len(rulebase.rules), self.run.rules)
