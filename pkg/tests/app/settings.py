SWEEP_CHUNK_SIZE = 64
