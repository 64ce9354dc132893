// Mirrors of the service's JSON bodies. The UI displays these verbatim and
// never derives game values of its own.

export type Side = 'alice' | 'bob';

export type SessionStatus = 'awaiting_human' | 'engine_thinking' | 'finished';

export interface AgentView {
  id: string;
  eff?: number[] | null;
  eff_str?: string[] | null;
  owner?: Side | null;
}

export interface MoveView {
  agent: string;
  side: Side;
  actor: 'human' | 'engine';
}

export interface ProvisionalView {
  alice: number;
  bob: number;
  score: number;
}

export interface SessionView {
  id: string;
  status: SessionStatus;
  human_side: Side;
  engine_policy: 'exact' | 'budgeted';
  tasks: number;
  to_move: Side | null;
  agents: AgentView[];
  move_log: MoveView[];
  provisional: ProvisionalView;
  final: number | null;
}

export interface ExchangeView {
  session: SessionView;
  picks: MoveView[];
}

export interface HintEntry {
  agent: string;
  value: number | null;
  bounds: [number, number] | null;
  badges: string[];
}

export interface HintsView {
  session_id: string;
  to_move: Side;
  hints: HintEntry[];
}

export interface WhatIfView {
  agent: string;
  score: number;
}

export interface CreateSessionRequest {
  instance?: unknown;
  instance_id?: string;
  human_side?: Side;
  policy?: 'exact' | 'budgeted';
}

export interface HealthView {
  status: string;
}
