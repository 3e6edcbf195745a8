// SPDX-License-Identifier: GPL-2.0
/*
 * Exec observation for Phase 1 (hash blocklist). One record per
 * successful tracepoint hit on execve/execveat; the wrapper exec*()
 * library calls all funnel into these two syscalls, so attaching
 * here covers them without chasing libc entry points.
 *
 * Build (Linux >= 5.8, clang >= 11):
 *   bpftool btf dump file /sys/kernel/btf/vmlinux format c > vmlinux.h
 *   clang -g -O2 -target bpf -D__TARGET_ARCH_x86 -c exec_probe.bpf.c -o exec_probe.bpf.o
 */
#include "vmlinux.h"
#include <bpf/bpf_helpers.h>
#include <bpf/bpf_core_read.h>
#include "records.h"

char LICENSE[] SEC("license") = "GPL";

struct {
	__uint(type, BPF_MAP_TYPE_RINGBUF);
	__uint(max_entries, 1 << 20);
} events SEC(".maps");

/* Reservation failures are counted, never silent: user space polls
 * slot 0 and treats a nonzero value as lost records. */
struct {
	__uint(type, BPF_MAP_TYPE_PERCPU_ARRAY);
	__uint(max_entries, 1);
	__type(key, __u32);
	__type(value, __u64);
} drops SEC(".maps");

static __always_inline void count_drop(void)
{
	__u32 slot = 0;
	__u64 *val = bpf_map_lookup_elem(&drops, &slot);

	if (val)
		__sync_fetch_and_add(val, 1);
}

static __always_inline int emit_exec(const char *filename)
{
	struct event_record *rec;

	rec = bpf_ringbuf_reserve(&events, sizeof(*rec), 0);
	if (!rec) {
		count_drop();
		return 0;
	}
	rec->pid = bpf_get_current_pid_tgid() >> 32;
	rec->uid = (__u32)bpf_get_current_uid_gid();
	bpf_get_current_comm(rec->comm, sizeof(rec->comm));
	rec->kind = RG_KIND_EXEC;
	rec->flags = 0;
	bpf_probe_read_user_str(rec->path, sizeof(rec->path), filename);
	rec->timestamp_ns = bpf_ktime_get_ns();
	bpf_ringbuf_submit(rec, 0);
	return 0;
}

SEC("tracepoint/syscalls/sys_enter_execve")
int handle_execve(struct trace_event_raw_sys_enter *ctx)
{
	return emit_exec((const char *)ctx->args[0]);
}

SEC("tracepoint/syscalls/sys_enter_execveat")
int handle_execveat(struct trace_event_raw_sys_enter *ctx)
{
	/* execveat(dirfd, pathname, ...): pathname is arg 1. */
	return emit_exec((const char *)ctx->args[1]);
}
