"""
Process pool for corpus runs.

The task function travels to every worker as cloudpickle bytes, so closures
survive the pipe; tasks are dealt round-robin and results come back in task
order, failures included.
"""
import pickle
from multiprocessing import Pipe, Process

import cloudpickle
from absl import logging
from tqdm import tqdm


def _work_loop(conn, parent_conn, payload):
    parent_conn.close()
    fn = pickle.loads(payload)
    while True:
        tasks = conn.recv()
        if tasks is None:
            conn.close()
            return
        out = []
        for task in tasks:
            try:
                out.append((True, fn(task)))
            except Exception as exc:  # re-raised by the pool
                out.append((False, exc))
        conn.send(out)


class TaskPool(object):
    """`n_workers` processes, each applying one function to its share of the tasks."""

    def __init__(self, fn, n_workers):
        self.n_workers = n_workers
        self.closed = False
        payload = cloudpickle.dumps(fn)
        pipes = [Pipe() for _ in range(n_workers)]
        self.conns = [parent for parent, _ in pipes]
        self.procs = [Process(target=_work_loop, args=(child, parent, payload), daemon=True)
                      for parent, child in pipes]
        for p in self.procs:
            p.start()
        for _, child in pipes:
            child.close()

    def map(self, tasks):
        """Results in task order; the first failed task re-raises its exception."""
        tasks = list(tasks)
        for i, conn in enumerate(self.conns):
            conn.send(tasks[i::self.n_workers])
        chunks = [conn.recv() for conn in self.conns]
        results = [None] * len(tasks)
        for i, chunk in enumerate(chunks):
            for j, (ok, value) in enumerate(chunk):
                if not ok:
                    raise value
                results[i + j * self.n_workers] = value
        return results

    def close(self):
        if self.closed:
            return
        for conn in self.conns:
            conn.send(None)
        for p in self.procs:
            p.join()
        self.closed = True


def run_tasks(fn, tasks, n_workers=1, progress=False):
    """fn over tasks, in order; in-process for a single worker."""
    tasks = list(tasks)
    if n_workers <= 1 or len(tasks) <= 1:
        return [fn(x) for x in tqdm(tasks, disable=not progress, desc="verify")]
    n_workers = min(n_workers, len(tasks))
    logging.info("running %d tasks on %d workers" % (len(tasks), n_workers))
    pool = TaskPool(fn, n_workers)
    try:
        return pool.map(tasks)
    finally:
        pool.close()
