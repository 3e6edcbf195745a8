// SPDX-License-Identifier: GPL-2.0
/*
 * Creation counting for Phase 2. Every O_CREAT open bumps a per-PID
 * counter; a record is emitted only once the counter reaches the
 * threshold, and for every creation after that (the ransom note may be
 * the N-th file, not the T-th). Gating in the kernel bounds ring-buffer
 * traffic during an encryption burst. Exit reaps the counter and is
 * forwarded so user space can reap its own per-PID state.
 *
 * threshold and raw_emit are const volatile so the loader can set them
 * at load time through the object's .rodata (no reload needed per run).
 *
 * Build: same recipe as exec_probe.bpf.c.
 */
#include "vmlinux.h"
#include <bpf/bpf_helpers.h>
#include <bpf/bpf_core_read.h>
#include "records.h"

char LICENSE[] SEC("license") = "GPL";

const volatile __u64 threshold = 10;
const volatile __u8 raw_emit = 0;

struct {
	__uint(type, BPF_MAP_TYPE_RINGBUF);
	__uint(max_entries, 1 << 20);
} events SEC(".maps");

struct {
	__uint(type, BPF_MAP_TYPE_PERCPU_ARRAY);
	__uint(max_entries, 1);
	__type(key, __u32);
	__type(value, __u64);
} drops SEC(".maps");

/* pid -> cumulative creat-open count; lazily created, reaped on exit.
 * Sized for a desktop host's live process count with headroom. */
struct {
	__uint(type, BPF_MAP_TYPE_HASH);
	__uint(max_entries, 65536);
	__type(key, __u32);
	__type(value, __u64);
} creation_counts SEC(".maps");

static __always_inline void count_drop(void)
{
	__u32 slot = 0;
	__u64 *val = bpf_map_lookup_elem(&drops, &slot);

	if (val)
		__sync_fetch_and_add(val, 1);
}

static __always_inline void emit(__u8 kind, __u32 flags, const char *pathname)
{
	struct event_record *rec;

	rec = bpf_ringbuf_reserve(&events, sizeof(*rec), 0);
	if (!rec) {
		count_drop();
		return;
	}
	rec->pid = bpf_get_current_pid_tgid() >> 32;
	rec->uid = (__u32)bpf_get_current_uid_gid();
	bpf_get_current_comm(rec->comm, sizeof(rec->comm));
	rec->kind = kind;
	rec->flags = flags;
	if (pathname)
		bpf_probe_read_user_str(rec->path, sizeof(rec->path), pathname);
	else
		rec->path[0] = '\0';
	rec->timestamp_ns = bpf_ktime_get_ns();
	bpf_ringbuf_submit(rec, 0);
}

static __always_inline int handle_open(__u32 flags, const char *pathname)
{
	__u32 pid = bpf_get_current_pid_tgid() >> 32;
	__u64 one = 1, *count;

	if (raw_emit) {
		emit(RG_KIND_OPEN, flags, pathname);
		return 0;
	}
	if (!(flags & RG_O_CREAT))
		return 0;

	count = bpf_map_lookup_elem(&creation_counts, &pid);
	if (count) {
		__sync_fetch_and_add(count, 1);
	} else if (bpf_map_update_elem(&creation_counts, &pid, &one, BPF_NOEXIST) == 0) {
		count = bpf_map_lookup_elem(&creation_counts, &pid);
		if (!count)
			return 0; /* reaped between update and lookup */
	} else {
		/* lost the insert race to a sibling thread; count ours too */
		count = bpf_map_lookup_elem(&creation_counts, &pid);
		if (!count)
			return 0; /* map full: miss rather than stall the host */
		__sync_fetch_and_add(count, 1);
	}

	if (*count >= threshold)
		emit(RG_KIND_OPEN, flags, pathname);
	return 0;
}

SEC("tracepoint/syscalls/sys_enter_openat")
int handle_openat(struct trace_event_raw_sys_enter *ctx)
{
	return handle_open((__u32)ctx->args[2], (const char *)ctx->args[1]);
}

SEC("tracepoint/syscalls/sys_enter_openat2")
int handle_openat2(struct trace_event_raw_sys_enter *ctx)
{
	struct open_how how = {};

	/* openat2(dirfd, pathname, struct open_how *, size) */
	bpf_probe_read_user(&how, sizeof(how), (void *)ctx->args[2]);
	return handle_open((__u32)how.flags, (const char *)ctx->args[1]);
}

SEC("tracepoint/sched/sched_process_exit")
int handle_exit(struct trace_event_raw_sched_process_template *ctx)
{
	__u32 pid = bpf_get_current_pid_tgid() >> 32;
	__u32 tid = (__u32)bpf_get_current_pid_tgid();

	/* Thread exits also fire this tracepoint; reap on process exit only. */
	if (pid != tid)
		return 0;
	bpf_map_delete_elem(&creation_counts, &pid);
	emit(RG_KIND_EXIT, 0, (const char *)0);
	return 0;
}
