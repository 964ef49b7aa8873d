import logging

from src.analyze_representation import analyze_representation
from src.catalog import SMALL_SYSTEMS, SURVEY_SYSTEMS
from src.config import LOG_LEVEL


def run_all():
    logging.basicConfig(level=LOG_LEVEL)
    for anyons in SMALL_SYSTEMS + SURVEY_SYSTEMS:
        print(analyze_representation(anyons))
        print("\n\n")

if __name__ == "__main__":
    run_all()
