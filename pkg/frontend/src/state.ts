import type {
  HintsView,
  MoveView,
  ProvisionalView,
  SessionStatus,
  SessionView,
  Side,
} from './types.js';

// View model for the draft table: rows are agents, columns are tasks.  Every
// number in it is copied from a service response; the client only orders and
// formats, it never scores.

export type SortOrder = { by: 'max' } | { by: 'task'; task: number };

export interface BoardRow {
  id: string;
  /** One display string per task, straight from eff or eff_str. */
  cells: string[];
  owner: Side | null;
  free: boolean;
  /** Exact value or bound interval from the hint endpoint, preformatted. */
  hint: string | null;
  badges: string[];
  /** Child-position score from the what-if endpoint, when hovered. */
  whatIf: string | null;
}

export interface BoardViewModel {
  sessionId: string;
  status: SessionStatus;
  humanSide: Side;
  toMove: Side | null;
  tasks: number;
  rows: BoardRow[];
  moveLog: MoveView[];
  provisional: ProvisionalView;
  final: number | null;
  sort: SortOrder;
  /** The human may pick right now. */
  canPick: boolean;
}

/** Numeric order for nonnegative decimal strings of any length. */
export function compareDecimal(a: string, b: string): number {
  if (a.length !== b.length) return a.length - b.length;
  return a < b ? -1 : a > b ? 1 : 0;
}

function displayCells(agent: SessionView['agents'][number], tasks: number): string[] {
  const values = agent.eff ?? agent.eff_str ?? [];
  const cells = values.map(String);
  while (cells.length < tasks) cells.push('');
  return cells;
}

function sortKey(cells: string[], sort: SortOrder): string {
  if (sort.by === 'task') return cells[sort.task] ?? '0';
  return cells.reduce((best, c) => (compareDecimal(c, best) > 0 ? c : best), '0');
}

export function buildBoard(
  session: SessionView,
  options: {
    hints?: HintsView | null;
    whatIf?: Record<string, number>;
    sort?: SortOrder;
  } = {},
): BoardViewModel {
  const sort = options.sort ?? { by: 'max' };
  const byAgent = new Map(
    (options.hints?.hints ?? []).map((h) => [h.agent, h]),
  );
  const whatIf = options.whatIf ?? {};

  const rows = session.agents.map((agent): BoardRow => {
    const hint = byAgent.get(agent.id);
    return {
      id: agent.id,
      cells: displayCells(agent, session.tasks),
      owner: agent.owner ?? null,
      free: !agent.owner,
      hint: hint
        ? hint.value !== null
          ? String(hint.value)
          : hint.bounds
            ? `[${hint.bounds[0]}, ${hint.bounds[1]}]`
            : null
        : null,
      badges: hint?.badges ?? [],
      whatIf: agent.id in whatIf ? String(whatIf[agent.id]) : null,
    };
  });
  // descending; Array.prototype.sort is stable, ties keep service order
  rows.sort((a, b) => compareDecimal(sortKey(b.cells, sort), sortKey(a.cells, sort)));

  return {
    sessionId: session.id,
    status: session.status,
    humanSide: session.human_side,
    toMove: session.to_move,
    tasks: session.tasks,
    rows,
    moveLog: session.move_log,
    provisional: session.provisional,
    final: session.final,
    sort,
    canPick:
      session.status === 'awaiting_human' && session.to_move === session.human_side,
  };
}
