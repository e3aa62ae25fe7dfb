"""Graph-class modes: which induced patterns each class forbids."""

MODE_CHAIR = "bull-chair"
MODE_E = "bull-e"
MODE_S113 = "bull-c5-s113"
MODE_S123 = "bull-c5-s123"

MODES = (MODE_CHAIR, MODE_E, MODE_S113, MODE_S123)

MODE_FORBIDDEN = {
    MODE_CHAIR: ("bull", "chair"),
    MODE_E: ("bull", "E"),
    MODE_S113: ("bull", "C5", "S113"),
    MODE_S123: ("bull", "C5", "S123"),
}
