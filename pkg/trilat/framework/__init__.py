from trilat.framework.typeiii import TypeIIITower, build_tower
from trilat.framework.record import InvariantRecord, compare, invariant_record, run_pipeline
